#include <doctest.h>

#include "supercalc/algebra.hpp"
#include "supercalc/diff_operator.hpp"
#include "support.hpp"

using namespace supercalc;

TEST_CASE("structure tensor is bilinear") {
    StructureTensor t(2);
    t.at(0, 1, 1) = Rational(3);
    t.at(1, 1, 0) = Rational(-1);
    auto r = t({Rational(1), Rational(2)}, {Rational(0), Rational(5)});
    CHECK(r[0] == Rational(-10));
    CHECK(r[1] == Rational(15));
}

TEST_CASE("truncated examples satisfy their axioms") {
    for (int n = 1; n <= 4; ++n) {
        auto np = make_truncated_example(n);
        CHECK(check_axioms(np, AlgebraClass::novikov_poisson).ok);
        CHECK(check_axioms(np, AlgebraClass::novikov).ok);
        auto nx = np_to_nx(np);
        CHECK(check_axioms(nx, AlgebraClass::nx_bialgebra).ok);
        CHECK(check_axioms(nx, AlgebraClass::form_compat).ok);
        CHECK(check_skew_symmetry(build_type1_operator(nx)).ok);
    }
}

TEST_CASE("truncation drops products that leave the basis") {
    auto np = make_truncated_example(3);
    CHECK(np.dimension == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(np.circ->at(1, 2, k).is_zero());
    CHECK(np.circ->at(1, 1, 2) == Rational(3));
}

TEST_CASE("mutated truncated example fails the cross identities") {
    auto nx = np_to_nx(make_truncated_example(1));
    nx.circ->at(0, 0, 0) = Rational(3);
    auto fails = failing_identities(nx, AlgebraClass::nx_bialgebra);
    REQUIRE(!fails.empty());
    bool cross = false;
    for (const auto& w : fails) cross |= w.identity.rfind("cross-", 0) == 0;
    CHECK(cross);
    CHECK(!check_axioms(nx, AlgebraClass::form_compat).ok);
}

TEST_CASE("missing products are reported by name") {
    AlgebraSpec s;
    s.dimension = 1;
    CHECK_THROWS_WITH_AS(check_axioms(s, AlgebraClass::novikov), "algebra has no 'circ' product", std::invalid_argument);
    s.circ = StructureTensor(1);
    CHECK_THROWS_AS(check_axioms(s, AlgebraClass::nx_bialgebra), std::invalid_argument);
}

TEST_CASE("Novikov-Poisson conversion preconditions") {
    auto np = make_truncated_example(2);
    auto no_unit = np;
    no_unit.identity.reset();
    CHECK_THROWS_AS(np_to_nx(no_unit), std::invalid_argument);
    auto wrong_unit = np;
    wrong_unit.identity = 1;
    CHECK_THROWS_AS(np_to_nx(wrong_unit), std::invalid_argument);
    auto scaled = np;
    scaled.circ->at(0, 0, 0) = Rational(3);
    CHECK_THROWS_AS(np_to_nx(scaled), std::invalid_argument);
}

TEST_CASE("exterior examples are fermionic Novikov") {
    for (const auto& c : std::vector<std::map<std::pair<int, int>, Rational>>{
             {}, {{{3, 4}, Rational(1)}}, {{{1, 2}, Rational(2)}, {{3, 4}, Rational(-1)}}}) {
        auto spec = make_exterior_example(c);
        CHECK(spec.dimension == 6);
        CHECK(check_axioms(spec, AlgebraClass::fermionic_novikov).ok);
        CHECK(check_skew_symmetry(build_type0_operator(spec)).ok);
    }
}

TEST_CASE("associator of v0, v1, v2 is c34 v5") {
    auto rng = testing_support::engine(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::map<std::pair<int, int>, Rational> c;
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) c[{i, j}] = testing_support::random_rational(rng);
        auto spec = make_exterior_example(c);
        const auto& o = *spec.circ;
        auto e = [](std::size_t k) {
            std::vector<Rational> v(6);
            v[k] = Rational(1);
            return v;
        };
        std::vector<Rational> assoc = o(o(e(0), e(1)), e(2));
        auto inner = o(e(0), o(e(1), e(2)));
        for (std::size_t k = 0; k < 6; ++k) assoc[k] -= inner[k];
        for (std::size_t k = 0; k < 5; ++k) CHECK(assoc[k].is_zero());
        CHECK(assoc[5] == c[{3, 4}]);
    }
}

TEST_CASE("random circ mutations of the exterior example fail both sides together") {
    auto rng = testing_support::engine(32);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    for (int trial = 0; trial < 6; ++trial) {
        auto spec = make_exterior_example({{{3, 4}, Rational(1)}});
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        spec.circ->at(i, j, k) += Rational(1);
        const bool alg = check_axioms(spec, AlgebraClass::fermionic_novikov).ok;
        const bool ham = is_hamiltonian(build_type0_operator(spec)).ok;
        CAPTURE(i);
        CAPTURE(j);
        CAPTURE(k);
        CHECK(alg == ham);
    }
}

TEST_CASE("class names round trip") {
    for (auto c : {AlgebraClass::novikov, AlgebraClass::novikov_super, AlgebraClass::nx_bialgebra,
                   AlgebraClass::novikov_poisson, AlgebraClass::fermionic_novikov, AlgebraClass::form_compat}) {
        CHECK(parse_algebra_class(to_string(c)) == c);
    }
    CHECK(!parse_algebra_class("lie"));
}
