#include <doctest.h>

#include <algorithm>

#include "supercalc/io.hpp"
#include "supercalc/polynomial.hpp"
#include "support.hpp"

using namespace supercalc;
using testing_support::engine;
using testing_support::random_polynomial;

namespace {

SuperPolynomial phi(int a, int n) { return SuperPolynomial::of(Generator::field(a, n)); }

// Sign of reordering a generator sequence into canonical order, counted
// directly as the parity of inversions among odd generators.
int inversion_sign(const std::vector<Generator>& seq) {
    int odd_inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[j] < seq[i] && seq[i].parity() == 1 && seq[j].parity() == 1) ++odd_inversions;
    return odd_inversions % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(-3, 4).str() == "-3/4");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("generator parities") {
    CHECK(Generator::field(0, 1).parity() == 1);
    CHECK(Generator::field(0, 2).parity() == 0);
    CHECK(Generator::covector(1, 0, 0, 1).parity() == 1);
    CHECK(Generator::covector(1, 0, 1, 1).parity() == 0);
    CHECK(Generator::covector(2, 0, 3, 0).parity() == 1);
    CHECK(Generator::field(2, 3).str() == "Phi2(3)");
    CHECK(Generator::covector(1, 0, 2, 1).str() == "xi1o_0(2)");
}

TEST_CASE("odd generators anticommute and square to zero") {
    auto a = phi(0, 1), b = phi(1, 3), c = phi(0, 2);
    CHECK((a * a).is_zero());
    CHECK(a * b == -(b * a));
    CHECK(a * c == c * a);
    CHECK(!(c * c).is_zero());
    CHECK((a * b * a).is_zero());
}

TEST_CASE("canonical ordering sign agrees with an inversion count") {
    auto rng = engine(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Generator> seq;
        std::uniform_int_distribution<int> len(1, 6);
        const int n = len(rng);
        for (int k = 0; k < n; ++k) seq.push_back(testing_support::random_field(rng, {}));
        auto sorted = seq;
        std::stable_sort(sorted.begin(), sorted.end());
        bool repeated_odd = false;
        for (std::size_t k = 1; k < sorted.size(); ++k)
            if (sorted[k] == sorted[k - 1] && sorted[k].parity() == 1) repeated_odd = true;
        auto p = SuperPolynomial::product(seq);
        if (repeated_odd) {
            CHECK(p.is_zero());
            continue;
        }
        CHECK(p == SuperPolynomial::product(sorted, Rational(inversion_sign(seq))));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    auto rng = engine(12);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_polynomial(rng, {});
        auto b = random_polynomial(rng, {});
        auto c = random_polynomial(rng, {});
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a + b) - b == a);
        CHECK(a * SuperPolynomial::one() == a);
    }
}

TEST_CASE("super-commutativity on homogeneous polynomials") {
    auto rng = engine(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int pa = trial % 2, pb = (trial / 2) % 2;
        auto a = random_polynomial(rng, {}, pa);
        auto b = random_polynomial(rng, {}, pb);
        CHECK(a * b == Rational(pa * pb ? -1 : 1) * (b * a));
    }
}

TEST_CASE("partial derivatives obey the graded Leibniz rule") {
    auto rng = engine(14);
    for (int trial = 0; trial < 100; ++trial) {
        const int pa = trial % 2;
        auto a = random_polynomial(rng, {}, pa);
        auto b = random_polynomial(rng, {});
        auto g = testing_support::random_field(rng, {});
        const Rational s(g.parity() * pa ? -1 : 1);
        CHECK(partial_derive(a * b, g) == partial_derive(a, g) * b + s * (a * partial_derive(b, g)));
    }
    CHECK(partial_derive(phi(0, 1) * phi(0, 2), Generator::field(0, 2)) == phi(0, 1));
    CHECK(partial_derive(phi(0, 1) * phi(0, 3), Generator::field(0, 3)) == -phi(0, 1));
}

TEST_CASE("polynomial text round trip") {
    auto rng = engine(15);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_polynomial(rng, {});
        CHECK(parse_polynomial(a.str()) == a);
    }
    CHECK(parse_polynomial("3*Phi0(1)*Phi0(2) - 1/2*xi1o_0(2)").str() == "3*Phi0(1)*Phi0(2) - 1/2*xi1o_0(2)");
    CHECK(parse_polynomial("Phi0(2)^2") == phi(0, 2) * phi(0, 2));
    CHECK(parse_polynomial("Phi0(3) * Phi0(1)") == -(phi(0, 1) * phi(0, 3)));
    CHECK(parse_polynomial("-1") == SuperPolynomial::constant(-1));
    CHECK_THROWS_AS(parse_polynomial("Phi0(0)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("2*"), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("Psi0(1)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial(""), std::invalid_argument);
}

TEST_CASE("parity split") {
    auto p = phi(0, 1) + phi(0, 2);
    CHECK(!p.parity());
    auto [even, odd] = p.split_parity();
    CHECK(even == phi(0, 2));
    CHECK(odd == phi(0, 1));
    CHECK(SuperPolynomial().parity() == 0);
}
