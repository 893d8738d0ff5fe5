#pragma once

// Normal-ordered matrix differential operators in D and the Hamiltonian
// criterion built on them.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supercalc/polynomial.hpp"

namespace supercalc {

/// sum_l coefficient_l * D^l with every coefficient to the left.
class ScalarDiffOperator {
public:
    ScalarDiffOperator() = default;

    /// Adds c * D^power; zero coefficients are dropped.
    void add_term(int power, const SuperPolynomial& c);

    const std::map<int, SuperPolynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    SuperPolynomial coefficient(int power) const;
    int max_power() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    SuperPolynomial apply(const SuperPolynomial& u) const;

    ScalarDiffOperator& operator+=(const ScalarDiffOperator& o);
    ScalarDiffOperator& operator*=(const Rational& c);
    friend ScalarDiffOperator operator+(ScalarDiffOperator a, const ScalarDiffOperator& b) { return a += b; }
    friend ScalarDiffOperator operator*(const Rational& c, ScalarDiffOperator a) { return a *= c; }
    ScalarDiffOperator operator-() const;

    friend bool operator==(const ScalarDiffOperator&, const ScalarDiffOperator&) = default;

    std::string str() const;

private:
    std::map<int, SuperPolynomial> terms_;
};

/// Normal-ordered form of D composed on the left of op.
ScalarDiffOperator compose_D_left(const ScalarDiffOperator& op);

/// H^i_{p,q} for blocks i in {0,1}; block index i is the parity of the
/// covector the block acts on.
class MatrixDiffOperator {
public:
    MatrixDiffOperator() = default;
    MatrixDiffOperator(int type, std::size_t dimension);

    int type() const { return type_; }
    std::size_t dimension() const { return dim_; }

    ScalarDiffOperator& entry(int block, std::size_t p, std::size_t q);
    const ScalarDiffOperator& entry(int block, std::size_t p, std::size_t q) const;

    /// Sets both blocks to the same entry, or block 1 to sign * block 0.
    void set_both(std::size_t p, std::size_t q, const ScalarDiffOperator& op, int odd_sign = 1);

    /// Checks that each coefficient a^i_{p,q,l} is homogeneous of parity
    /// type + l. Returns a description of the first violation.
    std::optional<std::string> validate() const;

    bool is_constant_coefficient() const;

    MatrixDiffOperator& operator+=(const MatrixDiffOperator& o);
    MatrixDiffOperator& operator*=(const Rational& c);
    friend MatrixDiffOperator operator+(MatrixDiffOperator a, const MatrixDiffOperator& b) { return a += b; }
    friend MatrixDiffOperator operator*(const Rational& c, MatrixDiffOperator a) { return a *= c; }

    /// Relabels families: entry (p,q) moves to (perm[p], perm[q]).
    MatrixDiffOperator permuted(const std::vector<std::size_t>& perm) const;

    friend bool operator==(const MatrixDiffOperator&, const MatrixDiffOperator&) = default;

    std::string str() const;

private:
    int type_ = 1;
    std::size_t dim_ = 0;
    std::array<std::vector<ScalarDiffOperator>, 2> blocks_;
};

struct SkewWitness {
    std::size_t p = 0, q = 0;
    int power = 0;
    /// "adjoint" for the operator identity, "blocks" for the parity-block relation.
    std::string condition;
    SuperPolynomial residual;
};

struct SkewResult {
    bool ok = true;
    std::optional<SkewWitness> witness;
};

SkewResult check_skew_symmetry(const MatrixDiffOperator& H);

/// A covector: one polynomial per family.
using Covector = std::vector<SuperPolynomial>;

/// (H xi)_p = sum_q H^i_{p,q} xi_q. Nonzero components must have parity
/// i + 1; otherwise std::invalid_argument.
Covector apply_matrix_operator(const MatrixDiffOperator& H, const Covector& xi, int parity);

/// The Frechet derivative of H at xi, as a d x d matrix of operators.
using OperatorMatrix = std::vector<std::vector<ScalarDiffOperator>>;
OperatorMatrix frechet(const MatrixDiffOperator& H, const Covector& xi, int parity);
Covector apply_operator_matrix(const OperatorMatrix& m, const Covector& eta);

/// Basis covector for slot s: a single fresh generator at `family`.
Covector basis_covector(int slot, int family, std::size_t dimension, int parity);

/// xi(u) = sum_p u_p xi_p.
SuperPolynomial pairing(const Covector& xi, const Covector& u);

struct Configuration {
    std::array<int, 3> families{};
    std::array<int, 3> parities{};
    friend auto operator<=>(const Configuration&, const Configuration&) = default;
    friend bool operator==(const Configuration&, const Configuration&) = default;
    std::string str() const;
};

/// All d^3 * 8 configurations in lexicographic order.
std::vector<Configuration> all_configurations(std::size_t dimension);

/// The Jacobi-type cyclic sum for H on basis covectors. Throws
/// std::invalid_argument if H fails the skew check.
SuperPolynomial hamiltonian_defect(const MatrixDiffOperator& H, const Configuration& config);

struct ConfigurationFailure {
    Configuration config;
    SuperPolynomial residual;
    /// Base generator whose variational derivative is nonzero.
    std::string offending_generator;
};

struct HamiltonianResult {
    bool ok = true;
    std::optional<SkewWitness> skew_failure;
    /// Lexicographically smallest failing configurations (up to the limit).
    std::vector<ConfigurationFailure> failures;
    std::size_t configurations_checked = 0;
};

struct CheckOptions {
    unsigned jobs = 1;
    std::size_t witness_limit = 1;
};

HamiltonianResult is_hamiltonian(const MatrixDiffOperator& H, const CheckOptions& options = {});

/// The six-term bracket [H1,H2] on basis covectors. Throws
/// std::invalid_argument on a type or dimension mismatch.
SuperPolynomial schouten_bracket(const MatrixDiffOperator& H1, const MatrixDiffOperator& H2,
                                 const Configuration& config);

/// True iff [H1,H2] is a total derivative for every configuration.
HamiltonianResult schouten_vanishes(const MatrixDiffOperator& H1, const MatrixDiffOperator& H2,
                                    const CheckOptions& options = {});

struct PairResult {
    bool ok = true;
    /// Which bracket failed first: "[H1,H1]", "[H2,H2]" or "[H1,H2]".
    std::string failed_bracket;
    std::vector<ConfigurationFailure> failures;
};

/// Throws std::invalid_argument on mismatch or if either operator fails
/// the skew check.
PairResult is_hamiltonian_pair(const MatrixDiffOperator& H1, const MatrixDiffOperator& H2,
                               const CheckOptions& options = {});

/// (Phi_a)_t = sum_b H_{a,b} delta_b(L).
Covector evolution_rhs(const MatrixDiffOperator& H, const SuperPolynomial& L);

}  // namespace supercalc
