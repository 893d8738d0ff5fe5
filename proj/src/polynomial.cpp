#include "supercalc/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace supercalc {

struct MonomialAccess {
    static std::vector<Factor>& factors(Monomial& m) { return m.factors_; }
};

Generator Generator::field(int family, int order) {
    if (family < 0 || order < 1) throw std::invalid_argument("field generator needs family >= 0 and order >= 1");
    Generator g;
    g.kind = GeneratorKind::field;
    g.family = static_cast<std::uint16_t>(family);
    g.order = static_cast<std::uint16_t>(order);
    g.base_parity = 0;
    return g;
}

Generator Generator::covector(int slot, int family, int derivatives, int base_parity) {
    if (slot < 1 || slot > 3) throw std::invalid_argument("covector slot must be 1, 2 or 3");
    if (family < 0 || derivatives < 0) throw std::invalid_argument("covector needs family >= 0 and derivatives >= 0");
    Generator g;
    g.kind = static_cast<GeneratorKind>(slot);
    g.family = static_cast<std::uint16_t>(family);
    g.order = static_cast<std::uint16_t>(derivatives);
    g.base_parity = static_cast<std::uint8_t>(base_parity & 1);
    return g;
}

Generator Generator::derived() const {
    Generator g = *this;
    ++g.order;
    return g;
}

Generator Generator::base() const {
    Generator g = *this;
    g.order = is_field() ? 1 : 0;
    return g;
}

std::string Generator::str() const {
    std::ostringstream os;
    if (is_field()) {
        os << "Phi" << family << '(' << order << ')';
    } else {
        os << "xi" << slot() << (base_parity ? 'o' : 'e') << '_' << family << '(' << order << ')';
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Generator& g) { return os << g.str(); }

int Monomial::parity() const {
    int p = 0;
    for (const auto& f : factors_) p ^= (f.gen.parity() & static_cast<int>(f.exponent & 1U));
    return p;
}

std::uint32_t Monomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& f : factors_) d += f.exponent;
    return d;
}

std::string Monomial::str() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += '*';
        out += factors_[i].gen.str();
        if (factors_[i].exponent > 1) out += '^' + std::to_string(factors_[i].exponent);
    }
    return out;
}

SignedMonomial normalize_monomial(std::span<const Generator> sequence) {
    std::vector<Generator> s(sequence.begin(), sequence.end());
    int sign = 1;
    // Insertion sort; each adjacent swap of two odd generators flips the sign.
    for (std::size_t i = 1; i < s.size(); ++i) {
        for (std::size_t j = i; j > 0 && s[j] < s[j - 1]; --j) {
            if (s[j].parity() && s[j - 1].parity()) sign = -sign;
            std::swap(s[j], s[j - 1]);
        }
    }
    SignedMonomial out;
    auto& fs = MonomialAccess::factors(out.monomial);
    for (const auto& g : s) {
        if (!fs.empty() && fs.back().gen == g) {
            if (g.parity()) return SignedMonomial{Monomial{}, 0};
            ++fs.back().exponent;
        } else {
            fs.push_back(Factor{g, 1});
        }
    }
    out.sign = sign;
    return out;
}

SignedMonomial multiply(const Monomial& a, const Monomial& b) {
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    SignedMonomial out;
    auto& fs = MonomialAccess::factors(out.monomial);
    fs.reserve(fa.size() + fb.size());

    // Odd factors of a not yet emitted; an odd factor of b jumping ahead of
    // them picks up one sign per factor.
    int odd_remaining = 0;
    for (const auto& f : fa) odd_remaining += f.gen.parity();

    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        if (j == fb.size() || (i < fa.size() && fa[i].gen < fb[j].gen)) {
            odd_remaining -= fa[i].gen.parity();
            fs.push_back(fa[i++]);
        } else if (i == fa.size() || fb[j].gen < fa[i].gen) {
            if (fb[j].gen.parity() && (odd_remaining & 1)) sign = -sign;
            fs.push_back(fb[j++]);
        } else {
            if (fa[i].gen.parity()) return SignedMonomial{Monomial{}, 0};
            fs.push_back(Factor{fa[i].gen, fa[i].exponent + fb[j].exponent});
            ++i;
            ++j;
        }
    }
    out.sign = sign;
    return out;
}

SuperPolynomial SuperPolynomial::constant(const Rational& c) {
    SuperPolynomial p;
    p.add_term(Monomial{}, c);
    return p;
}

SuperPolynomial SuperPolynomial::of(const Generator& g) {
    Generator seq[1] = {g};
    return product(seq);
}

SuperPolynomial SuperPolynomial::term(const Monomial& m, const Rational& c) {
    SuperPolynomial p;
    p.add_term(m, c);
    return p;
}

SuperPolynomial SuperPolynomial::product(std::span<const Generator> sequence, const Rational& c) {
    auto sm = normalize_monomial(sequence);
    SuperPolynomial p;
    if (sm.sign != 0) p.add_term(sm.monomial, sm.sign < 0 ? -c : c);
    return p;
}

Rational SuperPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> SuperPolynomial::parity() const {
    if (terms_.empty()) return 0;
    int p = terms_.begin()->first.parity();
    for (const auto& [m, c] : terms_) {
        if (m.parity() != p) return std::nullopt;
    }
    return p;
}

std::pair<SuperPolynomial, SuperPolynomial> SuperPolynomial::split_parity() const {
    std::pair<SuperPolynomial, SuperPolynomial> out;
    for (const auto& [m, c] : terms_) {
        (m.parity() ? out.second : out.first).terms_.emplace_hint(
            (m.parity() ? out.second : out.first).terms_.end(), m, c);
    }
    return out;
}

std::set<Generator> SuperPolynomial::generators() const {
    std::set<Generator> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& f : m.factors()) out.insert(f.gen);
    }
    return out;
}

std::set<Generator> SuperPolynomial::base_generators() const {
    std::set<Generator> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& f : m.factors()) out.insert(f.gen.base());
    }
    return out;
}

int SuperPolynomial::max_derivatives(const Generator& base) const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        for (const auto& f : m.factors()) {
            if (f.gen.base() == base) best = std::max(best, f.gen.derivative_count());
        }
    }
    return best;
}

void SuperPolynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    SuperPolynomial out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            auto sm = multiply(ma, mb);
            if (sm.sign == 0) continue;
            Rational c = ca * cb;
            out.add_term(sm.monomial, sm.sign < 0 ? -c : c);
        }
    }
    return out;
}

SuperPolynomial SuperPolynomial::operator-() const {
    SuperPolynomial out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

std::string SuperPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) out += '-';
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += mag.str();
        } else {
            if (mag != Rational(1)) out += mag.str() + '*';
            out += m.str();
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const SuperPolynomial& p) { return os << p.str(); }

SuperPolynomial partial_derive(const SuperPolynomial& u, const Generator& g) {
    SuperPolynomial out;
    const int pg = g.parity();
    for (const auto& [m, c] : u.terms()) {
        const auto& fs = m.factors();
        int before = 0;
        for (std::size_t idx = 0; idx < fs.size(); ++idx) {
            if (fs[idx].gen == g) {
                Monomial rest = m;
                auto& rf = MonomialAccess::factors(rest);
                Rational coeff = c * Rational(static_cast<long>(fs[idx].exponent));
                if (rf[idx].exponent > 1) {
                    --rf[idx].exponent;
                } else {
                    rf.erase(rf.begin() + static_cast<std::ptrdiff_t>(idx));
                }
                if (pg && (before & 1)) coeff = -coeff;
                out.add_term(rest, coeff);
                break;
            }
            before += fs[idx].gen.parity() * static_cast<int>(fs[idx].exponent);
        }
    }
    return out;
}

}  // namespace supercalc
