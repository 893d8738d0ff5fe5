#include "supercalc/diff_operator.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "supercalc/calculus.hpp"

namespace supercalc {

namespace {

bool odd(long x) { return (x % 2) != 0; }

}  // namespace

void ScalarDiffOperator::add_term(int power, const SuperPolynomial& c) {
    if (power < 0) throw std::invalid_argument("negative D power");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(power, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperPolynomial ScalarDiffOperator::coefficient(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? SuperPolynomial{} : it->second;
}

SuperPolynomial ScalarDiffOperator::apply(const SuperPolynomial& u) const {
    SuperPolynomial out;
    SuperPolynomial du = u;
    int at = 0;
    for (const auto& [l, c] : terms_) {
        du = apply_D(du, l - at);
        at = l;
        out += c * du;
    }
    return out;
}

ScalarDiffOperator& ScalarDiffOperator::operator+=(const ScalarDiffOperator& o) {
    for (const auto& [l, c] : o.terms_) add_term(l, c);
    return *this;
}

ScalarDiffOperator& ScalarDiffOperator::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [l, v] : terms_) v *= c;
    return *this;
}

ScalarDiffOperator ScalarDiffOperator::operator-() const {
    ScalarDiffOperator out = *this;
    for (auto& [l, v] : out.terms_) v = -v;
    return out;
}

std::string ScalarDiffOperator::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [l, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += '(' + c.str() + ')';
        if (l == 1) out += "*D";
        if (l > 1) out += "*D^" + std::to_string(l);
    }
    return out;
}

ScalarDiffOperator compose_D_left(const ScalarDiffOperator& op) {
    // D o u = D(u) + (-1)^{|u|} u D
    ScalarDiffOperator out;
    for (const auto& [l, c] : op.terms()) {
        out.add_term(l, apply_D(c));
        auto [even, oddp] = c.split_parity();
        out.add_term(l + 1, even - oddp);
    }
    return out;
}

MatrixDiffOperator::MatrixDiffOperator(int type, std::size_t dimension) : type_(type & 1), dim_(dimension) {
    if (type != 0 && type != 1) throw std::invalid_argument("operator type must be 0 or 1");
    for (auto& b : blocks_) b.assign(dim_ * dim_, ScalarDiffOperator{});
}

ScalarDiffOperator& MatrixDiffOperator::entry(int block, std::size_t p, std::size_t q) {
    if (block < 0 || block > 1 || p >= dim_ || q >= dim_) throw std::out_of_range("operator entry out of range");
    return blocks_[static_cast<std::size_t>(block)][p * dim_ + q];
}

const ScalarDiffOperator& MatrixDiffOperator::entry(int block, std::size_t p, std::size_t q) const {
    if (block < 0 || block > 1 || p >= dim_ || q >= dim_) throw std::out_of_range("operator entry out of range");
    return blocks_[static_cast<std::size_t>(block)][p * dim_ + q];
}

void MatrixDiffOperator::set_both(std::size_t p, std::size_t q, const ScalarDiffOperator& op, int odd_sign) {
    entry(0, p, q) = op;
    entry(1, p, q) = odd_sign < 0 ? -op : op;
}

std::optional<std::string> MatrixDiffOperator::validate() const {
    for (int i = 0; i < 2; ++i) {
        for (std::size_t p = 0; p < dim_; ++p) {
            for (std::size_t q = 0; q < dim_; ++q) {
                for (const auto& [l, c] : entry(i, p, q).terms()) {
                    auto par = c.parity();
                    int want = (type_ + l) % 2;
                    if (!par || *par != want) {
                        std::ostringstream os;
                        os << "coefficient of D^" << l << " in block " << i << " entry (" << p << ',' << q
                           << ") must have parity " << want << ": " << c.str();
                        return os.str();
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool MatrixDiffOperator::is_constant_coefficient() const {
    for (const auto& b : blocks_) {
        for (const auto& e : b) {
            for (const auto& [l, c] : e.terms()) {
                for (const auto& [m, v] : c.terms()) {
                    if (!m.is_one()) return false;
                }
            }
        }
    }
    return true;
}

MatrixDiffOperator& MatrixDiffOperator::operator+=(const MatrixDiffOperator& o) {
    if (o.type_ != type_ || o.dim_ != dim_) throw std::invalid_argument("operator type or dimension mismatch");
    for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < dim_ * dim_; ++k) blocks_[i][k] += o.blocks_[i][k];
    }
    return *this;
}

MatrixDiffOperator& MatrixDiffOperator::operator*=(const Rational& c) {
    for (auto& b : blocks_) {
        for (auto& e : b) e *= c;
    }
    return *this;
}

MatrixDiffOperator MatrixDiffOperator::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != dim_) throw std::invalid_argument("permutation size mismatch");
    MatrixDiffOperator out(type_, dim_);
    for (int i = 0; i < 2; ++i) {
        for (std::size_t p = 0; p < dim_; ++p) {
            for (std::size_t q = 0; q < dim_; ++q) {
                ScalarDiffOperator e;
                for (const auto& [l, c] : entry(i, p, q).terms()) {
                    SuperPolynomial relabeled;
                    for (const auto& [m, v] : c.terms()) {
                        std::vector<Generator> seq;
                        for (const auto& f : m.factors()) {
                            Generator g = f.gen;
                            if (g.is_field()) g.family = static_cast<std::uint16_t>(perm.at(g.family));
                            seq.insert(seq.end(), f.exponent, g);
                        }
                        relabeled += SuperPolynomial::product(seq, v);
                    }
                    e.add_term(l, relabeled);
                }
                out.entry(i, perm[p], perm[q]) = e;
            }
        }
    }
    return out;
}

std::string MatrixDiffOperator::str() const {
    std::ostringstream os;
    os << "type " << type_ << ", dimension " << dim_ << '\n';
    for (int i = 0; i < 2; ++i) {
        for (std::size_t p = 0; p < dim_; ++p) {
            for (std::size_t q = 0; q < dim_; ++q) {
                const auto& e = entry(i, p, q);
                if (!e.is_zero()) os << "  H" << i << '[' << p << ',' << q << "] = " << e.str() << '\n';
            }
        }
    }
    return os.str();
}

SkewResult check_skew_symmetry(const MatrixDiffOperator& H) {
    const int iota = H.type();
    const std::size_t d = H.dimension();
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = 0; q < d; ++q) {
            const auto& a0 = H.entry(0, p, q);
            const auto& a1 = H.entry(1, p, q);
            ScalarDiffOperator lhs;
            for (const auto& [l, c] : a0.terms()) {
                ScalarDiffOperator t;
                t.add_term(0, c);
                for (int k = 0; k < l; ++k) t = compose_D_left(t);
                long e = static_cast<long>(2 * iota + l) * (l - 1) / 2;
                if (odd(e)) t = -t;
                lhs += t;
            }
            const auto& rhs = H.entry(0, q, p);
            std::set<int> powers;
            for (const auto& [l, c] : lhs.terms()) powers.insert(l);
            for (const auto& [l, c] : rhs.terms()) powers.insert(l);
            for (const auto& [l, c] : a0.terms()) powers.insert(l);
            for (const auto& [l, c] : a1.terms()) powers.insert(l);
            for (int l : powers) {
                SuperPolynomial r = lhs.coefficient(l) - rhs.coefficient(l);
                if (!r.is_zero()) return {false, SkewWitness{p, q, l, "adjoint", r}};
                SuperPolynomial b1 = a1.coefficient(l);
                SuperPolynomial r2 = (iota == 1) ? a0.coefficient(l) - b1 : a0.coefficient(l) + b1;
                if (!r2.is_zero()) return {false, SkewWitness{p, q, l, "blocks", r2}};
            }
        }
    }
    return {};
}

namespace {

Covector apply_unchecked(const MatrixDiffOperator& H, const Covector& xi, int parity) {
    const std::size_t d = H.dimension();
    Covector out(d);
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = 0; q < d && q < xi.size(); ++q) {
            if (!xi[q].is_zero()) out[p] += H.entry(parity, p, q).apply(xi[q]);
        }
    }
    return out;
}

}  // namespace

Covector apply_matrix_operator(const MatrixDiffOperator& H, const Covector& xi, int parity) {
    if (xi.size() != H.dimension()) throw std::invalid_argument("covector dimension does not match operator");
    for (std::size_t q = 0; q < xi.size(); ++q) {
        if (xi[q].is_zero()) continue;
        auto p = xi[q].parity();
        if (!p || *p != (parity + 1) % 2) {
            throw std::invalid_argument("covector component " + std::to_string(q) + " has the wrong parity for block " +
                                        std::to_string(parity));
        }
    }
    return apply_unchecked(H, xi, parity & 1);
}

OperatorMatrix frechet(const MatrixDiffOperator& H, const Covector& xi, int parity) {
    const std::size_t d = H.dimension();
    const int iota = H.type();
    OperatorMatrix out(d, std::vector<ScalarDiffOperator>(d));
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t t = 0; t < d && t < xi.size(); ++t) {
            if (xi[t].is_zero()) continue;
            for (const auto& [l, a] : H.entry(parity, p, t).terms()) {
                SuperPolynomial dl_xi = apply_D(xi[t], l);
                for (std::size_t q = 0; q < d; ++q) {
                    int top = a.max_derivatives(Generator::field(static_cast<int>(q), 1));
                    for (int m = 0; m <= top; ++m) {
                        SuperPolynomial da = partial_derive(a, Generator::field(static_cast<int>(q), m + 1));
                        if (da.is_zero()) continue;
                        SuperPolynomial c = da * dl_xi;
                        if ((m * (parity + iota)) & 1) c = -c;
                        out[p][q].add_term(m, c);
                    }
                }
            }
        }
    }
    return out;
}

Covector apply_operator_matrix(const OperatorMatrix& m, const Covector& eta) {
    Covector out(m.size());
    for (std::size_t p = 0; p < m.size(); ++p) {
        for (std::size_t q = 0; q < m[p].size() && q < eta.size(); ++q) {
            if (!eta[q].is_zero()) out[p] += m[p][q].apply(eta[q]);
        }
    }
    return out;
}

Covector basis_covector(int slot, int family, std::size_t dimension, int parity) {
    if (family < 0 || static_cast<std::size_t>(family) >= dimension) throw std::out_of_range("covector family out of range");
    Covector xi(dimension);
    xi[static_cast<std::size_t>(family)] = SuperPolynomial::of(Generator::covector(slot, family, 0, (parity + 1) % 2));
    return xi;
}

SuperPolynomial pairing(const Covector& xi, const Covector& u) {
    SuperPolynomial out;
    for (std::size_t p = 0; p < xi.size() && p < u.size(); ++p) {
        if (!xi[p].is_zero() && !u[p].is_zero()) out += u[p] * xi[p];
    }
    return out;
}

std::string Configuration::str() const {
    std::ostringstream os;
    os << "families (" << families[0] << ',' << families[1] << ',' << families[2] << "), parities (" << parities[0]
       << ',' << parities[1] << ',' << parities[2] << ')';
    return os.str();
}

std::vector<Configuration> all_configurations(std::size_t dimension) {
    std::vector<Configuration> out;
    const int d = static_cast<int>(dimension);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int i1 = 0; i1 < 2; ++i1)
                    for (int i2 = 0; i2 < 2; ++i2)
                        for (int i3 = 0; i3 < 2; ++i3) out.push_back(Configuration{{a, b, c}, {i1, i2, i3}});
    return out;
}

namespace {

// s1 xi3(D_A xi1 . B xi2) + s2 xi1(D_A xi2 . B xi3) + s3 xi2(D_A xi3 . B xi1)
SuperPolynomial cyclic_sum(const MatrixDiffOperator& A, const MatrixDiffOperator& B, const Configuration& cfg) {
    const std::size_t d = A.dimension();
    const int iota = A.type();
    std::array<Covector, 3> xi;
    for (int s = 0; s < 3; ++s) xi[s] = basis_covector(s + 1, cfg.families[s], d, cfg.parities[s]);
    const auto [i1, i2, i3] = cfg.parities;

    auto term = [&](int s, int next, int outer) {
        Covector hx = apply_unchecked(B, xi[next], cfg.parities[next]);
        Covector fx = apply_operator_matrix(frechet(A, xi[s], cfg.parities[s]), hx);
        return pairing(xi[outer], fx);
    };
    SuperPolynomial t1 = term(0, 1, 2);
    SuperPolynomial t2 = term(1, 2, 0);
    SuperPolynomial t3 = term(2, 0, 1);
    const bool n1 = odd(i1);
    const bool n2 = odd(i2 + (i1 + iota) * (i2 + i3));
    const bool n3 = odd(i3 + (i3 + iota) * (i1 + i2));
    SuperPolynomial out;
    out += n1 ? -t1 : t1;
    out += n2 ? -t2 : t2;
    out += n3 ? -t3 : t3;
    return out;
}

std::optional<ConfigurationFailure> test_total(const SuperPolynomial& u, const Configuration& cfg) {
    for (const auto& b : u.base_generators()) {
        if (!variational_derivative(u, b).is_zero()) return ConfigurationFailure{cfg, u, b.str()};
    }
    if (!u.constant_term().is_zero()) return ConfigurationFailure{cfg, u, "1"};
    return std::nullopt;
}

template <class Eval>
std::vector<ConfigurationFailure> scan(std::size_t dimension, const CheckOptions& opt, Eval eval,
                                       std::size_t& checked) {
    const auto configs = all_configurations(dimension);
    const std::size_t limit = std::max<std::size_t>(opt.witness_limit, 1);
    std::vector<ConfigurationFailure> found;
    if (opt.jobs <= 1 || configs.size() < 2) {
        checked = 0;
        for (const auto& c : configs) {
            ++checked;
            if (auto f = eval(c)) {
                found.push_back(std::move(*f));
                if (found.size() >= limit) break;
            }
        }
        return found;
    }
    // Workers claim indices in order; an index is skipped once `limit`
    // failures with smaller indices are known, so the result matches the
    // sequential scan.
    std::mutex mu;
    std::map<std::size_t, ConfigurationFailure> failures;
    std::atomic<std::size_t> next{0};
    auto cutoff = [&](std::size_t idx) {
        std::lock_guard<std::mutex> lock(mu);
        if (failures.size() < limit) return false;
        auto it = failures.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(limit - 1));
        return idx > it->first;
    };
    auto worker = [&] {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= configs.size()) return;
            if (cutoff(idx)) continue;
            if (auto f = eval(configs[idx])) {
                std::lock_guard<std::mutex> lock(mu);
                failures.emplace(idx, std::move(*f));
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(opt.jobs, static_cast<unsigned>(configs.size()));
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& [idx, f] : failures) {
        if (found.size() >= limit) break;
        found.push_back(std::move(f));
    }
    // Same count the sequential scan reports.
    checked = configs.size();
    if (found.size() >= limit) {
        auto it = std::find(configs.begin(), configs.end(), found.back().config);
        checked = static_cast<std::size_t>(it - configs.begin()) + 1;
    }
    return found;
}

void require_skew(const MatrixDiffOperator& H, const char* what) {
    auto r = check_skew_symmetry(H);
    if (!r.ok) {
        const auto& w = *r.witness;
        throw std::invalid_argument(std::string(what) + " is not skew-symmetric (entry " + std::to_string(w.p) + "," +
                                    std::to_string(w.q) + ", D^" + std::to_string(w.power) + ", " + w.condition + ")");
    }
}

void require_compatible(const MatrixDiffOperator& A, const MatrixDiffOperator& B) {
    if (A.type() != B.type()) throw std::invalid_argument("operators have different types");
    if (A.dimension() != B.dimension()) throw std::invalid_argument("operators have different dimensions");
}

}  // namespace

SuperPolynomial hamiltonian_defect(const MatrixDiffOperator& H, const Configuration& config) {
    require_skew(H, "operator");
    return cyclic_sum(H, H, config);
}

HamiltonianResult is_hamiltonian(const MatrixDiffOperator& H, const CheckOptions& options) {
    HamiltonianResult res;
    auto skew = check_skew_symmetry(H);
    if (!skew.ok) {
        res.ok = false;
        res.skew_failure = skew.witness;
        return res;
    }
    res.failures = scan(
        H.dimension(), options, [&](const Configuration& c) { return test_total(cyclic_sum(H, H, c), c); },
        res.configurations_checked);
    res.ok = res.failures.empty();
    return res;
}

SuperPolynomial schouten_bracket(const MatrixDiffOperator& H1, const MatrixDiffOperator& H2,
                                 const Configuration& config) {
    require_compatible(H1, H2);
    return cyclic_sum(H1, H2, config) + cyclic_sum(H2, H1, config);
}

HamiltonianResult schouten_vanishes(const MatrixDiffOperator& H1, const MatrixDiffOperator& H2,
                                    const CheckOptions& options) {
    require_compatible(H1, H2);
    HamiltonianResult res;
    res.failures = scan(
        H1.dimension(), options,
        [&](const Configuration& c) { return test_total(schouten_bracket(H1, H2, c), c); },
        res.configurations_checked);
    res.ok = res.failures.empty();
    return res;
}

PairResult is_hamiltonian_pair(const MatrixDiffOperator& H1, const MatrixDiffOperator& H2,
                               const CheckOptions& options) {
    require_compatible(H1, H2);
    require_skew(H1, "first operator");
    require_skew(H2, "second operator");
    PairResult out;
    const std::pair<const char*, std::pair<const MatrixDiffOperator*, const MatrixDiffOperator*>> checks[] = {
        {"[H1,H1]", {&H1, &H1}}, {"[H2,H2]", {&H2, &H2}}, {"[H1,H2]", {&H1, &H2}}};
    for (const auto& [name, ops] : checks) {
        auto r = schouten_vanishes(*ops.first, *ops.second, options);
        if (!r.ok) {
            out.ok = false;
            out.failed_bracket = name;
            out.failures = std::move(r.failures);
            return out;
        }
    }
    return out;
}

Covector evolution_rhs(const MatrixDiffOperator& H, const SuperPolynomial& L) {
    const std::size_t d = H.dimension();
    Covector even(d), oddc(d);
    for (std::size_t b = 0; b < d; ++b) {
        auto [e, o] = variational_derivative(L, static_cast<int>(b)).split_parity();
        even[b] = std::move(e);
        oddc[b] = std::move(o);
    }
    // Components of parity i + 1 belong to a covector of degree i.
    Covector out = apply_unchecked(H, even, 1);
    Covector from_odd = apply_unchecked(H, oddc, 0);
    for (std::size_t p = 0; p < d; ++p) out[p] += from_odd[p];
    return out;
}

}  // namespace supercalc
