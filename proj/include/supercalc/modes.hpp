#pragma once

// Truncated formal distributions in (theta_i, z_i), i = 1..3, with Lie
// algebra mode coefficients, and the mode algebra induced by a linear
// type-1 operator.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercalc/diff_operator.hpp"
#include "supercalc/rational.hpp"

namespace supercalc {

/// phi_family(twice / 2): even `twice` is the integer mode twice/2, odd
/// `twice` is the half-integer mode (twice - 1)/2 + 1/2.
struct ModeLabel {
    int family = 0;
    int twice = 0;

    static ModeLabel integer(int family, int n) { return {family, 2 * n}; }
    static ModeLabel half(int family, int n) { return {family, 2 * n + 1}; }

    int parity() const { return twice & 1; }
    /// Integer part n of phi(n) or phi(n + 1/2).
    int integer_part() const { return twice >= 0 ? twice / 2 : -((-twice + 1) / 2); }
    std::string str() const;

    friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
    friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

struct Symbol {
    enum class Kind : std::uint8_t { unit = 0, central = 1, mode = 2 };
    Kind kind = Kind::unit;
    ModeLabel mode{};

    static Symbol unit() { return {}; }
    static Symbol central() { return {Kind::central, {}}; }
    static Symbol of(ModeLabel m) { return {Kind::mode, m}; }

    int parity() const { return kind == Kind::mode ? mode.parity() : 0; }
    std::string str() const;

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Finite rational combination of symbols; zeros are never stored.
class LinearCombination {
public:
    LinearCombination() = default;
    static LinearCombination of(const Symbol& s, const Rational& c = Rational(1));

    void add(const Symbol& s, const Rational& c);
    LinearCombination& operator+=(const LinearCombination& o);
    LinearCombination& operator*=(const Rational& c);
    friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
    friend LinearCombination operator*(const Rational& c, LinearCombination a) { return a *= c; }

    const std::map<Symbol, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Symbol& s) const;
    bool scalar_only() const;

    friend bool operator==(const LinearCombination&, const LinearCombination&) = default;
    std::string str() const;

private:
    std::map<Symbol, Rational> terms_;
};

/// Key: exponents of z_1..z_3 and the theta monomial as a bitmask
/// (bit i-1 for theta_i), stored in the order theta_1 theta_2 theta_3.
struct DistributionKey {
    std::array<int, 3> z{};
    std::uint8_t theta = 0;
    friend auto operator<=>(const DistributionKey&, const DistributionKey&) = default;
    friend bool operator==(const DistributionKey&, const DistributionKey&) = default;
};

/// Terms are stored as symbol * z^e * theta_S.
class FormalDistribution {
public:
    FormalDistribution() = default;
    explicit FormalDistribution(int window) : window_(window) {}

    static FormalDistribution monomial(const DistributionKey& key, const LinearCombination& c, int window = 0);

    int window() const { return window_; }
    const std::map<DistributionKey, LinearCombination>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    LinearCombination coefficient(const DistributionKey& key) const;

    void add(const DistributionKey& key, const LinearCombination& c);
    FormalDistribution& operator+=(const FormalDistribution& o);
    FormalDistribution& operator-=(const FormalDistribution& o);
    FormalDistribution& operator*=(const Rational& c);
    friend FormalDistribution operator+(FormalDistribution a, const FormalDistribution& b) { return a += b; }
    friend FormalDistribution operator-(FormalDistribution a, const FormalDistribution& b) { return a -= b; }
    friend FormalDistribution operator*(const Rational& c, FormalDistribution a) { return a *= c; }

    /// Product; at most one side may carry non-unit symbols. Throws
    /// std::invalid_argument otherwise.
    friend FormalDistribution operator*(const FormalDistribution& a, const FormalDistribution& b);

    /// Multiplies by z_i^k.
    FormalDistribution shifted(int variable, int k) const;

    /// True iff the coefficients agree at every key whose z-exponents all
    /// have absolute value at most `radius`.
    bool equal_within(const FormalDistribution& o, int radius) const;

    std::string str() const;

private:
    int window_ = 0;
    std::map<DistributionKey, LinearCombination> terms_;
};

/// (theta_i - theta_j) * sum_{|m| <= M} z_i^m z_j^{-m}.
FormalDistribution make_delta(int i, int j, int M);
/// The even companion sum_{|m| <= M} z_i^m z_j^{-m}.
FormalDistribution make_scalar_delta(int i, int j, int M);

/// D_i = theta_i d/dz_i + d/dtheta_i.
FormalDistribution apply_Di(const FormalDistribution& x, int i);
FormalDistribution apply_Di(const FormalDistribution& x, int i, int times);
FormalDistribution partial_z(const FormalDistribution& x, int i);

/// f0(z_i) + theta_i f1(z_i) from Laurent coefficient maps (exponent -> value).
FormalDistribution superfunction(int variable, const std::map<int, Rational>& f0, const std::map<int, Rational>& f1);

/// phi_a(theta_i, z_i) truncated to modes with |n| <= radius.
FormalDistribution field_series(int family, int N, int variable, int radius);

/// Operator data sum_g [sum_m a^m Phi_g(2(N-m)+1) D^{2m} + sum_n b^n Phi_g(2(N-n)) D^{2n+1}]
/// plus an optional constant block kappa D^P.
struct LinearOperatorData {
    int N = 1;
    std::size_t dimension = 1;
    /// a[m] indexed as (alpha, beta, gamma) via tensor_index.
    std::vector<std::vector<Rational>> a;
    std::vector<std::vector<Rational>> b;
    int central_power = 0;
    std::optional<std::vector<std::vector<Rational>>> kappa;

    LinearOperatorData() = default;
    LinearOperatorData(int N, std::size_t dimension);

    Rational& a_at(int m, std::size_t al, std::size_t be, std::size_t ga);
    const Rational& a_at(int m, std::size_t al, std::size_t be, std::size_t ga) const;
    Rational& b_at(int n, std::size_t al, std::size_t be, std::size_t ga);
    const Rational& b_at(int n, std::size_t al, std::size_t be, std::size_t ga) const;
    void set_central(int power, std::vector<std::vector<Rational>> k);

    MatrixDiffOperator realize() const;

    friend bool operator==(const LinearOperatorData&, const LinearOperatorData&) = default;
};

/// Data of the generalized super-Virasoro operator on n families.
LinearOperatorData super_virasoro_data(int n);

class ModeBracketTable {
public:
    ModeBracketTable() = default;
    ModeBracketTable(std::size_t families, int window) : families_(families), window_(window) {}

    std::size_t families() const { return families_; }
    int window() const { return window_; }
    bool in_window(const ModeLabel& m) const;

    void set(const ModeLabel& x, const ModeLabel& y, LinearCombination v);
    /// Throws std::out_of_range for modes outside the window.
    const LinearCombination& bracket(const ModeLabel& x, const ModeLabel& y) const;
    const LinearCombination* find(const ModeLabel& x, const ModeLabel& y) const;

    /// Every mode inside the window, in label order.
    std::vector<ModeLabel> modes() const;

    const std::map<std::pair<ModeLabel, ModeLabel>, LinearCombination>& entries() const { return entries_; }

    friend bool operator==(const ModeBracketTable&, const ModeBracketTable&) = default;

private:
    std::size_t families_ = 0;
    int window_ = 0;
    std::map<std::pair<ModeLabel, ModeLabel>, LinearCombination> entries_;
};

/// Throws std::invalid_argument if W < 1 or the realized operator is not
/// skew-symmetric. `extra_guard` widens the internal window.
ModeBracketTable induce_bracket(const LinearOperatorData& data, int W, int extra_guard = 0);

enum class IntegerCentralDelta { m_plus_n, m_plus_n_plus_1 };

/// Closed-form brackets of the generalized super-Virasoro algebra. The
/// second enum value puts delta_{m+n+1,0} in the integer central term, a
/// variant kept only so tests can show that it breaks skew-symmetry.
ModeBracketTable super_virasoro_table(int n, int W, IntegerCentralDelta central = IntegerCentralDelta::m_plus_n);

struct ModeWitness {
    std::vector<ModeLabel> modes;
    LinearCombination residual;
};

struct ModeCheckResult {
    bool ok = true;
    std::optional<ModeWitness> witness;
    std::size_t checked = 0;
};

ModeCheckResult check_super_skew(const ModeBracketTable& table);
/// Triples whose inner brackets leave the window are skipped.
ModeCheckResult check_super_jacobi(const ModeBracketTable& table);

}  // namespace supercalc
