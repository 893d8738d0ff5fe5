#pragma once

// Sparse super-commutative polynomials over exact rationals.
//
// Generators are the field derivatives Phi_a(n) = D^{n-1} Phi_a (parity n mod 2)
// and the formal covector derivatives D^k xi_{s,a} (parity base + k mod 2).
// Monomials are stored as sorted (generator, exponent) runs; odd generators
// never carry an exponent above one.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "supercalc/rational.hpp"

namespace supercalc {

enum class GeneratorKind : std::uint8_t { field = 0, covector1 = 1, covector2 = 2, covector3 = 3 };

struct Generator {
    GeneratorKind kind = GeneratorKind::field;
    std::uint16_t family = 0;
    /// Field order n >= 1, or derivative count k >= 0 for covectors.
    std::uint16_t order = 1;
    /// Parity of the underived covector; always 0 for fields.
    std::uint8_t base_parity = 0;

    static Generator field(int family, int order);
    /// Covector slot s in 1..3.
    static Generator covector(int slot, int family, int derivatives, int base_parity);

    bool is_field() const { return kind == GeneratorKind::field; }
    int slot() const { return static_cast<int>(kind); }
    int parity() const { return is_field() ? order % 2 : (base_parity + order) % 2; }

    /// D applied to this generator.
    Generator derived() const;
    /// The underived generator of the same family (Phi_a(1) or xi_{s,a}).
    Generator base() const;
    /// Number of D's applied on top of base().
    int derivative_count() const { return is_field() ? order - 1 : order; }

    std::string str() const;

    friend auto operator<=>(const Generator&, const Generator&) = default;
    friend bool operator==(const Generator&, const Generator&) = default;
};

struct Factor {
    Generator gen;
    std::uint32_t exponent = 1;
    friend auto operator<=>(const Factor&, const Factor&) = default;
    friend bool operator==(const Factor&, const Factor&) = default;
};

class Monomial {
public:
    Monomial() = default;

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    int parity() const;
    std::uint32_t degree() const;

    std::string str() const;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    friend struct MonomialAccess;
    std::vector<Factor> factors_;
};

/// A canonical monomial together with the reordering sign. sign == 0 means
/// the product vanished because an odd generator was repeated.
struct SignedMonomial {
    Monomial monomial;
    int sign = 1;
};

SignedMonomial normalize_monomial(std::span<const Generator> sequence);

/// Product of two canonical monomials, in this order.
SignedMonomial multiply(const Monomial& a, const Monomial& b);

class SuperPolynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    SuperPolynomial() = default;
    static SuperPolynomial constant(const Rational& c);
    static SuperPolynomial one() { return constant(Rational(1)); }
    static SuperPolynomial of(const Generator& g);
    static SuperPolynomial term(const Monomial& m, const Rational& c);
    /// Product of the generators in the given order, times c.
    static SuperPolynomial product(std::span<const Generator> sequence, const Rational& c = Rational(1));

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const { return coefficient(Monomial{}); }

    /// Parity if homogeneous; nullopt for mixed polynomials. Zero counts as even.
    std::optional<int> parity() const;
    /// (even part, odd part).
    std::pair<SuperPolynomial, SuperPolynomial> split_parity() const;

    /// Every distinct generator occurring in some monomial.
    std::set<Generator> generators() const;
    /// Every distinct base generator occurring (see Generator::base).
    std::set<Generator> base_generators() const;
    /// Highest order of a generator with the given base, or -1.
    int max_derivatives(const Generator& base) const;

    void add_term(const Monomial& m, const Rational& c);

    SuperPolynomial& operator+=(const SuperPolynomial& o);
    SuperPolynomial& operator-=(const SuperPolynomial& o);
    SuperPolynomial& operator*=(const Rational& c);
    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
    friend SuperPolynomial operator*(SuperPolynomial a, const Rational& c) { return a *= c; }
    friend SuperPolynomial operator*(const Rational& c, SuperPolynomial a) { return a *= c; }
    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
    SuperPolynomial operator-() const;

    friend bool operator==(const SuperPolynomial&, const SuperPolynomial&) = default;

    /// Canonical rendering, e.g. "3*Phi0(1)*Phi0(2) - 1/2*xi1o_0(2)".
    std::string str() const;

private:
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const SuperPolynomial& p);
std::ostream& operator<<(std::ostream& os, const Generator& g);

/// Left superderivation d/dg of parity |g|.
SuperPolynomial partial_derive(const SuperPolynomial& u, const Generator& g);

}  // namespace supercalc
