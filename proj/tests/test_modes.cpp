#include <doctest.h>

#include "supercalc/algebra.hpp"
#include "supercalc/modes.hpp"
#include "support.hpp"

using namespace supercalc;

namespace {

FormalDistribution theta(int i) {
    DistributionKey k;
    k.theta = static_cast<std::uint8_t>(1U << (i - 1));
    return FormalDistribution::monomial(k, LinearCombination::of(Symbol::unit()));
}

FormalDistribution random_superfunction(std::mt19937_64& rng, int variable) {
    std::uniform_int_distribution<int> exp(-3, 3), count(1, 3);
    std::map<int, Rational> f0, f1;
    for (int k = count(rng); k > 0; --k) f0[exp(rng)] += testing_support::random_rational(rng);
    for (int k = count(rng); k > 0; --k) f1[exp(rng)] += testing_support::random_rational(rng);
    return superfunction(variable, f0, f1);
}

bool same(const FormalDistribution& a, const FormalDistribution& b) { return (a - b).is_zero(); }

ModeLabel I(int f, int n) { return ModeLabel::integer(f, n); }
ModeLabel H(int f, int n) { return ModeLabel::half(f, n); }

}  // namespace

TEST_CASE("mode labels") {
    CHECK(I(0, 3).str() == "phi0(3)");
    CHECK(H(0, -1).str() == "phi0(-1/2)");
    CHECK(H(1, 2).str() == "phi1(5/2)");
    CHECK(H(0, -2).integer_part() == -2);
    CHECK(I(0, -2).integer_part() == -2);
    CHECK(H(0, 0).parity() == 1);
    CHECK(I(0, 0).parity() == 0);
}

TEST_CASE("linear combinations drop zeros") {
    auto a = LinearCombination::of(Symbol::of(I(0, 1)), Rational(2));
    a.add(Symbol::of(I(0, 1)), Rational(-2));
    CHECK(a.is_zero());
    auto b = LinearCombination::of(Symbol::central(), Rational(3)) + LinearCombination::of(Symbol::unit());
    CHECK(!b.scalar_only());
    CHECK(b.coefficient(Symbol::central()) == Rational(3));
    CHECK(LinearCombination::of(Symbol::unit(), Rational(2)).scalar_only());
}

TEST_CASE("theta variables anticommute") {
    CHECK((theta(1) * theta(2) + theta(2) * theta(1)).is_zero());
    CHECK((theta(1) * theta(1)).is_zero());
}

TEST_CASE("D_i squared is d/dz_i") {
    auto rng = testing_support::engine(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_superfunction(rng, 1) * random_superfunction(rng, 2);
        for (int i = 1; i <= 2; ++i) CHECK(same(apply_Di(f, i, 2), partial_z(f, i)));
    }
}

TEST_CASE("D_i is an odd derivation") {
    auto rng = testing_support::engine(42);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_superfunction(rng, 1);
        auto g = random_superfunction(rng, 1) * random_superfunction(rng, 2);
        FormalDistribution even, odd;
        for (const auto& [k, c] : f.terms()) (k.theta ? odd : even).add(k, c);
        CHECK(same(apply_Di(even * g, 1), apply_Di(even, 1) * g + even * apply_Di(g, 1)));
        CHECK(same(apply_Di(odd * g, 1), apply_Di(odd, 1) * g - odd * apply_Di(g, 1)));
    }
}

TEST_CASE("f(theta1, z1) Delta12 = f(theta2, z2) Delta12") {
    const int M = 8;
    auto delta = make_delta(1, 2, M);
    std::map<int, Rational> f0{{1, Rational(1)}}, f1{{2, Rational(1)}};
    auto lhs = superfunction(1, f0, f1) * delta;
    auto rhs = superfunction(2, f0, f1) * delta;
    CHECK(lhs.equal_within(rhs, M - 3));
    CHECK(!lhs.equal_within(FormalDistribution(), M - 3));
    CHECK(!lhs.equal_within(superfunction(2, f1, f0) * delta, M - 3));

    auto rng = testing_support::engine(43);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> exp(-2, 2);
        std::map<int, Rational> g0{{exp(rng), testing_support::random_rational(rng)}};
        std::map<int, Rational> g1{{exp(rng), testing_support::random_rational(rng)}};
        CHECK((superfunction(1, g0, g1) * delta).equal_within(superfunction(2, g0, g1) * delta, M - 3));
    }
}

TEST_CASE("exchanging D_1 and D_2 on the delta distribution") {
    const int M = 8;
    auto delta = make_delta(1, 2, M);
    for (int n = 0; n <= 2; ++n) {
        const int r = M - n - 2;
        auto even_l = apply_Di(delta, 1, 2 * n).shifted(2, -1);
        auto even_r = apply_Di(delta, 2, 2 * n).shifted(1, -1);
        CHECK(even_l.equal_within(Rational(n % 2 ? -1 : 1) * even_r, r));
        auto odd_l = apply_Di(delta, 1, 2 * n + 1).shifted(2, -1);
        auto odd_r = apply_Di(delta, 2, 2 * n + 1).shifted(1, -1);
        CHECK(odd_l.equal_within(Rational((n + 1) % 2 ? -1 : 1) * odd_r, r));
        CHECK(!even_l.equal_within(FormalDistribution(), r));
        CHECK(!odd_l.equal_within(FormalDistribution(), r));
        CHECK(!odd_l.equal_within(Rational(n % 2 ? -1 : 1) * odd_r, r));
    }
}

TEST_CASE("the super-Virasoro operator is skew") {
    for (int n = 1; n <= 3; ++n) {
        auto data = super_virasoro_data(n);
        CHECK(!data.realize().validate().has_value());
    }
}

TEST_CASE("induced table equals the closed form") {
    for (int n = 1; n <= 3; ++n) {
        auto induced = induce_bracket(super_virasoro_data(n), 4);
        auto closed = super_virasoro_table(n, 4);
        CHECK(induced == closed);
        CHECK(check_super_skew(induced).ok);
        CHECK(check_super_jacobi(induced).ok);
    }
}

TEST_CASE("closed-form brackets at sample modes") {
    auto t = super_virasoro_table(1, 4);
    auto c = Symbol::central();
    CHECK(t.bracket(I(0, 2), I(0, -2)) ==
          LinearCombination::of(Symbol::of(I(0, 0)), Rational(8)) + LinearCombination::of(c, Rational(6)));
    CHECK(t.bracket(I(0, 2), I(0, -3)) == LinearCombination::of(Symbol::of(I(0, -1)), Rational(10)));
    CHECK(t.bracket(H(0, -2), H(0, 1)) ==
          LinearCombination::of(Symbol::of(I(0, 0))) + LinearCombination::of(c, Rational(2)));
    CHECK_THROWS_AS(t.bracket(I(0, 5), I(0, 0)), std::out_of_range);
}

TEST_CASE("half-integer by integer coefficient") {
    // [phi_i(m+1/2), phi_j(n)] = [(j+2)(m+1) - (i+1)(n+1)] phi_{i+j}(m+n+1/2)
    auto t = super_virasoro_table(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; i + j < 2; ++j)
            for (int m = -1; m <= 1; ++m)
                for (int n = -1; n <= 1; ++n) {
                    const long coeff = (j + 2) * (m + 1) - (i + 1) * (n + 1);
                    CHECK(t.bracket(H(i, m), I(j, n)) == LinearCombination::of(Symbol::of(H(i + j, m + n)), Rational(coeff)));
                }
}

TEST_CASE("delta_{m+n+1,0} in the integer central term breaks skew-symmetry") {
    auto t = super_virasoro_table(1, 4, IntegerCentralDelta::m_plus_n_plus_1);
    auto res = check_super_skew(t);
    CHECK(!res.ok);
    REQUIRE(res.witness);
    CHECK(res.witness->modes.size() == 2);
}

TEST_CASE("induce rejects bad windows and non-skew data") {
    CHECK_THROWS_AS(induce_bracket(super_virasoro_data(1), 0), std::invalid_argument);
    auto data = super_virasoro_data(1);
    data.b_at(0, 0, 0, 0) = Rational(5);
    CHECK_THROWS_AS(induce_bracket(data, 2), std::invalid_argument);
}

TEST_CASE("Jacobi detects a perturbed table") {
    auto t = super_virasoro_table(1, 3);
    t.set(I(0, 1), I(0, -1), LinearCombination::of(Symbol::of(I(0, 0)), Rational(7)));
    t.set(I(0, -1), I(0, 1), LinearCombination::of(Symbol::of(I(0, 0)), Rational(-7)));
    CHECK(check_super_skew(t).ok);
    CHECK(!check_super_jacobi(t).ok);
}

namespace {

// Linear data whose realization is the type-1 operator of an NX-bialgebra.
LinearOperatorData linear_data_of(const AlgebraSpec& nx) {
    const std::size_t d = nx.dimension;
    LinearOperatorData data(1, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t g = 0; g < d; ++g) {
                data.a_at(0, a, b, g) = nx.circ->at(a, b, g);
                data.a_at(1, a, b, g) = nx.circ->at(a, b, g) + nx.circ->at(b, a, g) - nx.times->at(a, b, g);
                data.b_at(0, a, b, g) = nx.times->at(a, b, g);
            }
    data.set_central(5, *nx.form);
    return data;
}

}  // namespace

TEST_CASE("tables induced from Hamiltonian data satisfy Jacobi") {
    for (int n = 1; n <= 3; ++n) {
        auto nx = np_to_nx(make_truncated_example(n));
        auto data = linear_data_of(nx);
        REQUIRE(data.realize() == build_type1_operator(nx));
        auto t = induce_bracket(data, 3);
        CHECK(check_super_skew(t).ok);
        CHECK(check_super_jacobi(t).ok);
    }
}

TEST_CASE("a skew but non-Hamiltonian mutation breaks Jacobi") {
    auto nx = np_to_nx(make_truncated_example(1));
    nx.circ->at(0, 0, 0) = Rational(3);
    auto data = linear_data_of(nx);
    REQUIRE(!data.realize().validate().has_value());
    auto t = induce_bracket(data, 3);
    CHECK(check_super_skew(t).ok);
    auto jac = check_super_jacobi(t);
    CHECK(!jac.ok);
    REQUIRE(jac.witness);
    CHECK(jac.witness->modes.size() == 3);
}

TEST_CASE("a wider guard does not change the table") {
    auto data = super_virasoro_data(2);
    CHECK(induce_bracket(data, 3) == induce_bracket(data, 3, 2));
}
