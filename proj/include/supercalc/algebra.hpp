#pragma once

// Finite-dimensional algebras given by structure constants, axiom checks,
// and the correspondences with first-order-in-fields operators.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercalc/diff_operator.hpp"
#include "supercalc/rational.hpp"

namespace supercalc {

/// e_i * e_j = sum_k t(i,j,k) e_k.
class StructureTensor {
public:
    StructureTensor() = default;
    explicit StructureTensor(std::size_t dimension) : dim_(dimension), v_(dimension * dimension * dimension) {}

    std::size_t dimension() const { return dim_; }
    Rational& at(std::size_t i, std::size_t j, std::size_t k) { return v_.at((i * dim_ + j) * dim_ + k); }
    const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return v_.at((i * dim_ + j) * dim_ + k); }

    /// Bilinear product of coordinate vectors.
    std::vector<Rational> operator()(const std::vector<Rational>& x, const std::vector<Rational>& y) const;

    friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Rational> v_;
};

using Form = std::vector<std::vector<Rational>>;

struct AlgebraSpec {
    std::size_t dimension = 0;
    std::optional<StructureTensor> circ;
    std::optional<StructureTensor> times;
    std::optional<StructureTensor> dot;
    std::optional<Form> form;
    /// Parity of each basis vector, for superalgebra checks.
    std::optional<std::vector<int>> grading;
    /// Basis index of the unit for the dot product.
    std::optional<std::size_t> identity;

    friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

enum class AlgebraClass { novikov, novikov_super, nx_bialgebra, novikov_poisson, fermionic_novikov, form_compat };

std::optional<AlgebraClass> parse_algebra_class(const std::string& name);
std::string to_string(AlgebraClass c);

struct AxiomWitness {
    std::size_t i = 0, j = 0, k = 0;
    std::string identity;
    /// Coordinates of lhs - rhs.
    std::vector<Rational> residual;
};

struct AxiomResult {
    bool ok = true;
    std::optional<AxiomWitness> witness;
};

/// Checks every defining identity on all basis triples. Throws
/// std::invalid_argument naming the missing product or form.
AxiomResult check_axioms(const AlgebraSpec& spec, AlgebraClass cls);

/// Every identity of the class that fails, each with its first failing triple.
std::vector<AxiomWitness> failing_identities(const AlgebraSpec& spec, AlgebraClass cls);

/// Type-1 operator from (circ, times, form); the dot product is derived as
/// u.v = u o v + v o u - u x v.
MatrixDiffOperator build_type1_operator(const AlgebraSpec& spec);

/// Type-0 operator from circ, with u x v = v o u - u o v.
MatrixDiffOperator build_type0_operator(const AlgebraSpec& spec);

/// Novikov-Poisson algebra with unit e, e o e = 2e, to the NX-bialgebra
/// with times := dot. Throws std::invalid_argument naming the failed
/// precondition.
AlgebraSpec np_to_nx(const AlgebraSpec& spec);

/// e_i . e_j = e_{i+j}, e_i o e_j = (j+2) e_{i+j}, truncated at n;
/// form e_0 (x) e_0; identity e_0.
AlgebraSpec make_truncated_example(int n);

/// The six-dimensional fermionic example built inside the exterior algebra
/// on e_1..e_4; keys (i,j) with 1 <= i < j <= 4.
AlgebraSpec make_exterior_example(const std::map<std::pair<int, int>, Rational>& c);

}  // namespace supercalc
