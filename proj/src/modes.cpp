#include "supercalc/modes.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace supercalc {

std::string ModeLabel::str() const {
    std::ostringstream os;
    os << "phi" << family << '(';
    if (parity() == 0) {
        os << twice / 2;
    } else {
        // (twice)/2 as a half-integer
        os << (twice < 0 ? "-" : "") << std::abs(twice) << "/2";
    }
    os << ')';
    return os.str();
}

std::string Symbol::str() const {
    switch (kind) {
        case Kind::unit: return "1";
        case Kind::central: return "c";
        case Kind::mode: return mode.str();
    }
    return "?";
}

LinearCombination LinearCombination::of(const Symbol& s, const Rational& c) {
    LinearCombination out;
    out.add(s, c);
    return out;
}

void LinearCombination::add(const Symbol& s, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LinearCombination& LinearCombination::operator+=(const LinearCombination& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
}

LinearCombination& LinearCombination::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [s, v] : terms_) v *= c;
    return *this;
}

Rational LinearCombination::coefficient(const Symbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool LinearCombination::scalar_only() const {
    for (const auto& [s, c] : terms_) {
        if (s.kind != Symbol::Kind::unit) return false;
    }
    return true;
}

std::string LinearCombination::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        Rational mag = c.sign() < 0 ? -c : c;
        out += first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ");
        first = false;
        if (s.kind == Symbol::Kind::unit) {
            out += mag.str();
        } else {
            if (mag != Rational(1)) out += mag.str() + '*';
            out += s.str();
        }
    }
    return out;
}

FormalDistribution FormalDistribution::monomial(const DistributionKey& key, const LinearCombination& c, int window) {
    FormalDistribution out(window);
    out.add(key, c);
    return out;
}

LinearCombination FormalDistribution::coefficient(const DistributionKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? LinearCombination{} : it->second;
}

void FormalDistribution::add(const DistributionKey& key, const LinearCombination& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormalDistribution& FormalDistribution::operator+=(const FormalDistribution& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    window_ = std::max(window_, o.window_);
    return *this;
}

FormalDistribution& FormalDistribution::operator-=(const FormalDistribution& o) {
    for (const auto& [k, c] : o.terms_) add(k, Rational(-1) * c);
    window_ = std::max(window_, o.window_);
    return *this;
}

FormalDistribution& FormalDistribution::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

namespace {

// theta_S theta_T = sign * theta_{S|T}; sign 0 when they overlap.
int theta_product_sign(std::uint8_t s, std::uint8_t t) {
    if (s & t) return 0;
    int swaps = 0;
    for (int bit = 0; bit < 3; ++bit) {
        if (t & (1U << bit)) swaps += std::popcount(static_cast<unsigned>(s >> (bit + 1)));
    }
    return (swaps & 1) ? -1 : 1;
}

}  // namespace

FormalDistribution operator*(const FormalDistribution& a, const FormalDistribution& b) {
    FormalDistribution out(std::max(a.window_, b.window_));
    for (const auto& [ka, ca] : a.terms_) {
        const bool a_scalar = ca.scalar_only();
        for (const auto& [kb, cb] : b.terms_) {
            int sign = theta_product_sign(ka.theta, kb.theta);
            if (sign == 0) continue;
            DistributionKey k;
            for (int i = 0; i < 3; ++i) k.z[i] = ka.z[i] + kb.z[i];
            k.theta = static_cast<std::uint8_t>(ka.theta | kb.theta);
            LinearCombination c;
            if (a_scalar) {
                // The symbols of b move left past theta_{S(a)}.
                Rational sa = ca.coefficient(Symbol::unit());
                int nth = std::popcount(static_cast<unsigned>(ka.theta));
                for (const auto& [s, v] : cb.terms()) {
                    Rational x = sa * v;
                    if ((s.parity() & nth & 1) != 0) x = -x;
                    c.add(s, x);
                }
            } else if (cb.scalar_only()) {
                c = cb.coefficient(Symbol::unit()) * ca;
            } else {
                throw std::invalid_argument("product of two distributions with mode coefficients");
            }
            if (sign < 0) c *= Rational(-1);
            out.add(k, c);
        }
    }
    return out;
}

FormalDistribution FormalDistribution::shifted(int variable, int k) const {
    FormalDistribution out(window_);
    for (const auto& [key, c] : terms_) {
        DistributionKey nk = key;
        nk.z.at(static_cast<std::size_t>(variable - 1)) += k;
        out.terms_.emplace(nk, c);
    }
    return out;
}

bool FormalDistribution::equal_within(const FormalDistribution& o, int radius) const {
    auto inside = [radius](const DistributionKey& k) {
        for (int e : k.z) {
            if (e < -radius || e > radius) return false;
        }
        return true;
    };
    for (const auto& [k, c] : terms_) {
        if (inside(k) && o.coefficient(k) != c) return false;
    }
    for (const auto& [k, c] : o.terms_) {
        if (inside(k) && coefficient(k) != c) return false;
    }
    return true;
}

std::string FormalDistribution::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.str() << ')';
        for (int i = 0; i < 3; ++i) {
            if (k.z[i] != 0) os << "*z" << (i + 1) << '^' << k.z[i];
        }
        for (int i = 0; i < 3; ++i) {
            if (k.theta & (1U << i)) os << "*theta" << (i + 1);
        }
    }
    return os.str();
}

FormalDistribution make_scalar_delta(int i, int j, int M) {
    if (i < 1 || i > 3 || j < 1 || j > 3 || i == j) throw std::invalid_argument("delta needs two distinct variables in 1..3");
    if (M < 1) throw std::invalid_argument("delta window must be at least 1");
    FormalDistribution out(M);
    for (int m = -M; m <= M; ++m) {
        DistributionKey k;
        k.z[static_cast<std::size_t>(i - 1)] = m;
        k.z[static_cast<std::size_t>(j - 1)] = -m;
        out.add(k, LinearCombination::of(Symbol::unit()));
    }
    return out;
}

FormalDistribution make_delta(int i, int j, int M) {
    FormalDistribution delta = make_scalar_delta(i, j, M);
    FormalDistribution theta_diff(M);
    DistributionKey ti, tj;
    ti.theta = static_cast<std::uint8_t>(1U << (i - 1));
    tj.theta = static_cast<std::uint8_t>(1U << (j - 1));
    theta_diff.add(ti, LinearCombination::of(Symbol::unit()));
    theta_diff.add(tj, LinearCombination::of(Symbol::unit(), Rational(-1)));
    return theta_diff * delta;
}

FormalDistribution apply_Di(const FormalDistribution& x, int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("variable index must be 1, 2 or 3");
    const auto bit = static_cast<std::uint8_t>(1U << (i - 1));
    const auto zi = static_cast<std::size_t>(i - 1);
    FormalDistribution out(x.window());
    for (const auto& [k, c] : x.terms()) {
        for (const auto& [s, v] : c.terms()) {
            // D_i is odd: passing the symbol costs (-1)^{|s|}.
            Rational base = s.parity() ? -v : v;
            if (k.z[zi] != 0) {
                int sign = theta_product_sign(bit, k.theta);
                if (sign != 0) {
                    DistributionKey nk = k;
                    nk.z[zi] -= 1;
                    nk.theta = static_cast<std::uint8_t>(k.theta | bit);
                    Rational r = base * Rational(k.z[zi]);
                    out.add(nk, LinearCombination::of(s, sign < 0 ? -r : r));
                }
            }
            if (k.theta & bit) {
                int before = std::popcount(static_cast<unsigned>(k.theta & (bit - 1)));
                DistributionKey nk = k;
                nk.theta = static_cast<std::uint8_t>(k.theta & ~bit);
                out.add(nk, LinearCombination::of(s, (before & 1) ? -base : base));
            }
        }
    }
    return out;
}

FormalDistribution apply_Di(const FormalDistribution& x, int i, int times) {
    FormalDistribution out = x;
    for (int k = 0; k < times; ++k) out = apply_Di(out, i);
    return out;
}

FormalDistribution partial_z(const FormalDistribution& x, int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("variable index must be 1, 2 or 3");
    const auto zi = static_cast<std::size_t>(i - 1);
    FormalDistribution out(x.window());
    for (const auto& [k, c] : x.terms()) {
        if (k.z[zi] == 0) continue;
        DistributionKey nk = k;
        nk.z[zi] -= 1;
        out.add(nk, Rational(k.z[zi]) * c);
    }
    return out;
}

FormalDistribution superfunction(int variable, const std::map<int, Rational>& f0, const std::map<int, Rational>& f1) {
    FormalDistribution out;
    const auto zi = static_cast<std::size_t>(variable - 1);
    for (const auto& [e, c] : f0) {
        DistributionKey k;
        k.z[zi] = e;
        out.add(k, LinearCombination::of(Symbol::unit(), c));
    }
    for (const auto& [e, c] : f1) {
        DistributionKey k;
        k.z[zi] = e;
        k.theta = static_cast<std::uint8_t>(1U << (variable - 1));
        out.add(k, LinearCombination::of(Symbol::unit(), c));
    }
    return out;
}

FormalDistribution field_series(int family, int N, int variable, int radius) {
    FormalDistribution out(radius);
    const auto zi = static_cast<std::size_t>(variable - 1);
    for (int n = -radius; n <= radius; ++n) {
        DistributionKey k;
        k.z[zi] = -n - N - 1;
        out.add(k, LinearCombination::of(Symbol::of(ModeLabel::half(family, n))));
        k.theta = static_cast<std::uint8_t>(1U << (variable - 1));
        out.add(k, LinearCombination::of(Symbol::of(ModeLabel::integer(family, n))));
    }
    return out;
}

LinearOperatorData::LinearOperatorData(int N_, std::size_t dimension_) : N(N_), dimension(dimension_) {
    if (N < 1) throw std::invalid_argument("top order N must be at least 1");
    const std::size_t cube = dimension * dimension * dimension;
    a.assign(static_cast<std::size_t>(N) + 1, std::vector<Rational>(cube));
    b.assign(static_cast<std::size_t>(N), std::vector<Rational>(cube));
}

Rational& LinearOperatorData::a_at(int m, std::size_t al, std::size_t be, std::size_t ga) {
    return a.at(static_cast<std::size_t>(m)).at((al * dimension + be) * dimension + ga);
}
const Rational& LinearOperatorData::a_at(int m, std::size_t al, std::size_t be, std::size_t ga) const {
    return a.at(static_cast<std::size_t>(m)).at((al * dimension + be) * dimension + ga);
}
Rational& LinearOperatorData::b_at(int n, std::size_t al, std::size_t be, std::size_t ga) {
    return b.at(static_cast<std::size_t>(n)).at((al * dimension + be) * dimension + ga);
}
const Rational& LinearOperatorData::b_at(int n, std::size_t al, std::size_t be, std::size_t ga) const {
    return b.at(static_cast<std::size_t>(n)).at((al * dimension + be) * dimension + ga);
}

void LinearOperatorData::set_central(int power, std::vector<std::vector<Rational>> k) {
    if (power < 0) throw std::invalid_argument("central power must be nonnegative");
    if (k.size() != dimension) throw std::invalid_argument("central block has the wrong shape");
    for (const auto& row : k) {
        if (row.size() != dimension) throw std::invalid_argument("central block has the wrong shape");
    }
    central_power = power;
    kappa = std::move(k);
}

MatrixDiffOperator LinearOperatorData::realize() const {
    MatrixDiffOperator H(1, dimension);
    for (std::size_t al = 0; al < dimension; ++al) {
        for (std::size_t be = 0; be < dimension; ++be) {
            ScalarDiffOperator e;
            for (std::size_t ga = 0; ga < dimension; ++ga) {
                const int g = static_cast<int>(ga);
                for (int m = 0; m <= N; ++m) {
                    const Rational& c = a_at(m, al, be, ga);
                    if (!c.is_zero()) e.add_term(2 * m, SuperPolynomial::of(Generator::field(g, 2 * (N - m) + 1)) * c);
                }
                for (int n = 0; n < N; ++n) {
                    const Rational& c = b_at(n, al, be, ga);
                    if (!c.is_zero()) e.add_term(2 * n + 1, SuperPolynomial::of(Generator::field(g, 2 * (N - n))) * c);
                }
            }
            if (kappa) e.add_term(central_power, SuperPolynomial::constant((*kappa)[al][be]));
            H.set_both(al, be, e);
        }
    }
    return H;
}

LinearOperatorData super_virasoro_data(int n) {
    if (n < 1) throw std::invalid_argument("family count must be at least 1");
    const auto d = static_cast<std::size_t>(n);
    LinearOperatorData data(1, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i + j >= d) continue;
            data.a_at(1, i, j, i + j) = Rational(static_cast<long>(i + j) + 3);
            data.b_at(0, i, j, i + j) = Rational(1);
            data.a_at(0, i, j, i + j) = Rational(static_cast<long>(j) + 2);
        }
    }
    std::vector<std::vector<Rational>> k(d, std::vector<Rational>(d));
    k[0][0] = Rational(1);
    data.set_central(5, std::move(k));
    return data;
}

bool ModeBracketTable::in_window(const ModeLabel& m) const {
    int n = m.integer_part();
    return m.family >= 0 && static_cast<std::size_t>(m.family) < families_ && n >= -window_ && n <= window_;
}

void ModeBracketTable::set(const ModeLabel& x, const ModeLabel& y, LinearCombination v) {
    if (!in_window(x) || !in_window(y)) throw std::out_of_range("mode outside the table window");
    entries_[{x, y}] = std::move(v);
}

const LinearCombination& ModeBracketTable::bracket(const ModeLabel& x, const ModeLabel& y) const {
    auto* v = find(x, y);
    if (!v) throw std::out_of_range("no bracket for " + x.str() + ", " + y.str() + " within window " +
                                    std::to_string(window_));
    return *v;
}

const LinearCombination* ModeBracketTable::find(const ModeLabel& x, const ModeLabel& y) const {
    auto it = entries_.find({x, y});
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<ModeLabel> ModeBracketTable::modes() const {
    std::vector<ModeLabel> out;
    for (std::size_t f = 0; f < families_; ++f) {
        for (int t = -2 * window_; t <= 2 * window_ + 1; ++t) out.push_back({static_cast<int>(f), t});
    }
    return out;
}

ModeBracketTable induce_bracket(const LinearOperatorData& data, int W, int extra_guard) {
    if (W < 1) throw std::invalid_argument("window must be at least 1");
    auto skew = check_skew_symmetry(data.realize());
    if (!skew.ok) throw std::invalid_argument("operator data is not skew-symmetric");
    const int N = data.N;
    const std::size_t d = data.dimension;
    const int M = W + N + 2 + extra_guard;
    const int radius = 2 * M + 2 * N + 2;

    const FormalDistribution delta = make_delta(1, 2, M);
    std::vector<FormalDistribution> d_delta(static_cast<std::size_t>(std::max(2 * N + 1, data.central_power) + 1));
    d_delta[0] = delta;
    for (std::size_t k = 1; k < d_delta.size(); ++k) d_delta[k] = apply_Di(d_delta[k - 1], 1);

    // Per family g: the products D1^{2(N-m)} phi_g * D1^{2m} Delta and
    // D1^{2(N-n)-1} phi_g * D1^{2n+1} Delta, each shifted by z2^{-1}.
    std::vector<std::vector<FormalDistribution>> even_terms(d), odd_terms(d);
    for (std::size_t g = 0; g < d; ++g) {
        const FormalDistribution phi = field_series(static_cast<int>(g), N, 1, radius);
        std::vector<FormalDistribution> dphi(static_cast<std::size_t>(2 * N) + 1);
        dphi[0] = phi;
        for (std::size_t k = 1; k < dphi.size(); ++k) dphi[k] = apply_Di(dphi[k - 1], 1);
        for (int m = 0; m <= N; ++m) {
            even_terms[g].push_back(
                (dphi[static_cast<std::size_t>(2 * (N - m))] * d_delta[static_cast<std::size_t>(2 * m)]).shifted(2, -1));
        }
        for (int n = 0; n < N; ++n) {
            odd_terms[g].push_back(
                (dphi[static_cast<std::size_t>(2 * (N - n) - 1)] * d_delta[static_cast<std::size_t>(2 * n + 1)])
                    .shifted(2, -1));
        }
    }
    FormalDistribution central_term;
    if (data.kappa) {
        for (const auto& [k, c] : d_delta[static_cast<std::size_t>(data.central_power)].terms()) {
            central_term.add(k, LinearCombination::of(Symbol::central(), c.coefficient(Symbol::unit())));
        }
        central_term = central_term.shifted(2, -1);
    }

    ModeBracketTable table(d, W);
    struct Slot {
        std::uint8_t theta;
        int pa, pb, sign;
    };
    // theta1 theta2 -> [phi^0, phi^0]; theta1 -> -[phi^0, phi^1];
    // theta2 -> [phi^1, phi^0]; no theta -> [phi^1, phi^1]
    const Slot slots[] = {{0b011, 0, 0, 1}, {0b001, 0, 1, -1}, {0b010, 1, 0, 1}, {0b000, 1, 1, 1}};
    for (std::size_t al = 0; al < d; ++al) {
        for (std::size_t be = 0; be < d; ++be) {
            for (int m = -W; m <= W; ++m) {
                for (int n = -W; n <= W; ++n) {
                    for (const auto& sl : slots) {
                        DistributionKey key;
                        key.z = {-m - N - 1, -n - N - 1, 0};
                        key.theta = sl.theta;
                        LinearCombination v;
                        for (std::size_t g = 0; g < d; ++g) {
                            for (int k = 0; k <= N; ++k) {
                                const Rational& c = data.a_at(k, al, be, g);
                                if (!c.is_zero()) v += c * even_terms[g][static_cast<std::size_t>(k)].coefficient(key);
                            }
                            for (int k = 0; k < N; ++k) {
                                const Rational& c = data.b_at(k, al, be, g);
                                if (!c.is_zero()) v += c * odd_terms[g][static_cast<std::size_t>(k)].coefficient(key);
                            }
                        }
                        if (data.kappa) {
                            const Rational& c = (*data.kappa)[al][be];
                            if (!c.is_zero()) v += c * central_term.coefficient(key);
                        }
                        if (sl.sign < 0) v *= Rational(-1);
                        table.set({static_cast<int>(al), 2 * m + sl.pa}, {static_cast<int>(be), 2 * n + sl.pb},
                                  std::move(v));
                    }
                }
            }
        }
    }
    return table;
}

ModeBracketTable super_virasoro_table(int nf, int W, IntegerCentralDelta central) {
    if (nf < 1) throw std::invalid_argument("family count must be at least 1");
    if (W < 1) throw std::invalid_argument("window must be at least 1");
    ModeBracketTable t(static_cast<std::size_t>(nf), W);
    auto mode = [nf](int family, int twice) -> std::optional<Symbol> {
        if (family >= nf) return std::nullopt;
        return Symbol::of({family, twice});
    };
    for (int i = 0; i < nf; ++i) {
        for (int j = 0; j < nf; ++j) {
            const bool origin = i == 0 && j == 0;
            for (int m = -W; m <= W; ++m) {
                for (int n = -W; n <= W; ++n) {
                    // [phi_i(m+1/2), phi_j(n+1/2)]
                    LinearCombination hh;
                    if (origin && m + n + 1 == 0) hh.add(Symbol::central(), Rational(static_cast<long>(n + 1) * n));
                    if (auto s = mode(i + j, 2 * (m + n + 1))) hh.add(*s, Rational(1));
                    t.set(ModeLabel::half(i, m), ModeLabel::half(j, n), std::move(hh));

                    // [phi_i(m+1/2), phi_j(n)]
                    LinearCombination hi;
                    if (auto s = mode(i + j, 2 * (m + n) + 1)) {
                        hi.add(*s, Rational(static_cast<long>(j + 2) * (m + 1) - static_cast<long>(i + 1) * (n + 1)));
                    }
                    t.set(ModeLabel::half(i, m), ModeLabel::integer(j, n), std::move(hi));

                    // [phi_i(m), phi_j(n)]
                    LinearCombination ii;
                    const bool hit = central == IntegerCentralDelta::m_plus_n ? m + n == 0 : m + n + 1 == 0;
                    if (origin && hit) ii.add(Symbol::central(), Rational(-static_cast<long>(n + 1) * n * (n - 1)));
                    if (auto s = mode(i + j, 2 * (m + n))) {
                        ii.add(*s, Rational(static_cast<long>(j + 2) * (m + 1) - static_cast<long>(i + 2) * (n + 1)));
                    }
                    t.set(ModeLabel::integer(i, m), ModeLabel::integer(j, n), std::move(ii));

                    // [phi_i(m), phi_j(n+1/2)] = -[phi_j(n+1/2), phi_i(m)]
                    LinearCombination ih;
                    if (auto s = mode(i + j, 2 * (m + n) + 1)) {
                        ih.add(*s, -Rational(static_cast<long>(i + 2) * (n + 1) - static_cast<long>(j + 1) * (m + 1)));
                    }
                    t.set(ModeLabel::integer(i, m), ModeLabel::half(j, n), std::move(ih));
                }
            }
        }
    }
    return t;
}

ModeCheckResult check_super_skew(const ModeBracketTable& table) {
    ModeCheckResult res;
    for (const auto& [xy, v] : table.entries()) {
        const auto& [x, y] = xy;
        const LinearCombination* w = table.find(y, x);
        if (!w) continue;
        ++res.checked;
        LinearCombination sum = v;
        sum += ((x.parity() & y.parity()) ? Rational(-1) : Rational(1)) * *w;
        if (!sum.is_zero()) {
            res.ok = false;
            res.witness = ModeWitness{{x, y}, sum};
            return res;
        }
    }
    return res;
}

namespace {

// [comb, z]; nullopt when comb holds a mode outside the window.
std::optional<LinearCombination> bracket_with(const ModeBracketTable& t, const LinearCombination& comb,
                                              const ModeLabel& z) {
    LinearCombination out;
    for (const auto& [s, c] : comb.terms()) {
        if (s.kind != Symbol::Kind::mode) continue;
        const LinearCombination* v = t.find(s.mode, z);
        if (!v) return std::nullopt;
        out += c * *v;
    }
    return out;
}

}  // namespace

ModeCheckResult check_super_jacobi(const ModeBracketTable& table) {
    ModeCheckResult res;
    const auto modes = table.modes();
    for (const auto& x : modes) {
        for (const auto& y : modes) {
            const LinearCombination* xy = table.find(x, y);
            if (!xy) continue;
            for (const auto& z : modes) {
                const LinearCombination* yz = table.find(y, z);
                const LinearCombination* zx = table.find(z, x);
                if (!yz || !zx) continue;
                auto t1 = bracket_with(table, *xy, z);
                if (!t1) continue;
                auto t2 = bracket_with(table, *yz, x);
                if (!t2) continue;
                auto t3 = bracket_with(table, *zx, y);
                if (!t3) continue;
                ++res.checked;
                const int px = x.parity(), py = y.parity(), pz = z.parity();
                LinearCombination sum = *t1;
                sum += ((px * (py + pz)) & 1 ? Rational(-1) : Rational(1)) * *t2;
                sum += ((pz * (px + py)) & 1 ? Rational(-1) : Rational(1)) * *t3;
                if (!sum.is_zero()) {
                    res.ok = false;
                    res.witness = ModeWitness{{x, y, z}, sum};
                    return res;
                }
            }
        }
    }
    return res;
}

}  // namespace supercalc
