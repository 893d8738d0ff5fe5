#pragma once

// The odd derivation D, variational derivatives, the total-derivative test
// and evolutionary derivations.

#include <map>
#include <vector>

#include "supercalc/polynomial.hpp"

namespace supercalc {

/// D(Phi_a(n)) = Phi_a(n+1), D(D^k xi) = D^{k+1} xi, graded Leibniz.
SuperPolynomial apply_D(const SuperPolynomial& u);
SuperPolynomial apply_D(const SuperPolynomial& u, int times);

/// Variational derivative with respect to the base generator `base`
/// (Phi_a(1) or an underived covector).
SuperPolynomial variational_derivative(const SuperPolynomial& u, const Generator& base);
/// Shorthand for the field family a.
SuperPolynomial variational_derivative(const SuperPolynomial& u, int family);

/// True iff u lies in D(A). Throws std::domain_error when u has a nonzero
/// constant term, since the test does not apply there.
bool is_total_derivative(const SuperPolynomial& u);

/// An element of L_s: components u_a in A_{s+1}.
class EvolutionaryField {
public:
    EvolutionaryField() = default;
    /// Throws std::invalid_argument if a component has the wrong parity.
    EvolutionaryField(std::vector<SuperPolynomial> components, int parity);

    const std::vector<SuperPolynomial>& components() const { return components_; }
    int parity() const { return parity_; }
    std::size_t dimension() const { return components_.size(); }

    friend bool operator==(const EvolutionaryField&, const EvolutionaryField&) = default;

private:
    std::vector<SuperPolynomial> components_;
    int parity_ = 0;
};

SuperPolynomial evolutionary_apply(const EvolutionaryField& f, const SuperPolynomial& u);

/// A derivation given by its images on generators; unlisted generators map
/// to zero. Applied as a left derivation of the given parity.
struct Derivation {
    int parity = 0;
    std::map<Generator, SuperPolynomial> images;

    SuperPolynomial apply(const SuperPolynomial& u) const;
};

/// The derivation defined by f, listed on field generators up to max_order.
Derivation to_derivation(const EvolutionaryField& f, int max_order);

bool check_commutes_with_D(const Derivation& x, const std::vector<SuperPolynomial>& probes);
bool check_commutes_with_D(const EvolutionaryField& f, const std::vector<SuperPolynomial>& probes);

/// w with [d_u, d_v] = d_w.
EvolutionaryField evolutionary_bracket(const EvolutionaryField& f, const EvolutionaryField& g);

}  // namespace supercalc
