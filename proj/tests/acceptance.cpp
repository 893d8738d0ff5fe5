// Acceptance run: one pass/fail line per criterion.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "supercalc/algebra.hpp"
#include "supercalc/calculus.hpp"
#include "supercalc/diff_operator.hpp"
#include "supercalc/modes.hpp"
#include "supercalc/suite.hpp"
#include "support.hpp"

using namespace supercalc;

namespace {

constexpr double kTruncatedLimitSeconds = 60.0;
constexpr double kConstantOperatorLimitSeconds = 10.0;
constexpr double kInduceLimitSeconds = 120.0;
constexpr int kInduceWindow = 4;
constexpr int kDeltaGuard = 8;

struct Outcome {
    bool ok = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double s) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << s;
    return os.str();
}

SuperPolynomial phi(int n) { return SuperPolynomial::of(Generator::field(0, n)); }

MatrixDiffOperator power(int type, int l, int odd_sign) {
    ScalarDiffOperator op;
    op.add_term(l, SuperPolynomial::one());
    MatrixDiffOperator H(type, 1);
    H.set_both(0, 0, op, odd_sign);
    return H;
}

AlgebraSpec mutated_truncated() {
    auto spec = np_to_nx(make_truncated_example(1));
    spec.circ->at(0, 0, 0) = Rational(3);
    return spec;
}

const std::vector<std::map<std::pair<int, int>, Rational>>& exterior_assignments() {
    static const std::vector<std::map<std::pair<int, int>, Rational>> c = {
        {}, {{{3, 4}, Rational(1)}}, {{{1, 2}, Rational(2)}, {{3, 4}, Rational(-1)}}};
    return c;
}

Outcome criterion1() {
    double worst = 0;
    for (int n = 1; n <= 4; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        auto H = build_type1_operator(np_to_nx(make_truncated_example(n)));
        auto res = is_hamiltonian(H);
        const double s = seconds_since(t0);
        worst = std::max(worst, s);
        const std::size_t expected = static_cast<std::size_t>(n * n * n * 8);
        if (!res.ok || res.configurations_checked != expected || s > kTruncatedLimitSeconds) {
            return {false, "n=" + std::to_string(n) + " failed (" + std::to_string(res.configurations_checked) + " of " +
                               std::to_string(expected) + " configurations, " + fixed(s) + " s)"};
        }
    }
    return {true, "truncated NX operators n=1..4 Hamiltonian on all configurations, slowest n " + fixed(worst) +
                      " s (limit " + fixed(kTruncatedLimitSeconds) + " s)"};
}

Outcome criterion2() {
    auto spec = mutated_truncated();
    auto H = build_type1_operator(spec);
    const bool skew = check_skew_symmetry(H).ok;
    const bool ham = is_hamiltonian(H).ok;
    const std::set<std::string> targets = {"cross-circ-compatibility", "cross-circ-sum", "cross-associator",
                                           "form-invariant", "form-cross"};
    std::string hit;
    for (auto cls : {AlgebraClass::nx_bialgebra, AlgebraClass::form_compat}) {
        for (const auto& w : failing_identities(spec, cls)) {
            if (targets.count(w.identity)) hit += (hit.empty() ? "" : ", ") + w.identity;
        }
    }
    const bool ok = (!skew || !ham) && !hit.empty();
    return {ok, std::string("e0 o e0 = 3 e0: skew ") + (skew ? "holds" : "fails") + ", Hamiltonian test " +
                    (ham ? "passes" : "fails") + "; failing identities: " + (hit.empty() ? "none" : hit)};
}

Outcome criterion3() {
    for (const auto& c : exterior_assignments()) {
        auto spec = make_exterior_example(c);
        if (!check_axioms(spec, AlgebraClass::fermionic_novikov).ok) return {false, "fermionic axioms fail"};
        if (!is_hamiltonian(build_type0_operator(spec)).ok) return {false, "type-0 operator not Hamiltonian"};

        const auto& o = *spec.circ;
        auto e = [](std::size_t k) {
            std::vector<Rational> v(6);
            v[k] = Rational(1);
            return v;
        };
        auto assoc = o(o(e(0), e(1)), e(2));
        auto inner = o(e(0), o(e(1), e(2)));
        const Rational c34 = c.count({3, 4}) ? c.at({3, 4}) : Rational(0);
        for (std::size_t k = 0; k < 6; ++k) {
            if (assoc[k] - inner[k] != (k == 5 ? c34 : Rational(0))) return {false, "associator (v0,v1,v2) != c34 v5"};
        }
    }

    // A seeded mutation that breaks the axioms must break the operator too.
    auto rng = testing_support::engine(301);
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    std::string drawn;
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto spec = make_exterior_example({{{3, 4}, Rational(1)}});
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        spec.circ->at(i, j, k) += Rational(1);
        const bool alg = check_axioms(spec, AlgebraClass::fermionic_novikov).ok;
        const bool ham = is_hamiltonian(build_type0_operator(spec)).ok;
        if (alg != ham) return {false, "mutation (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ") splits the verdicts"};
        if (!alg) {
            drawn = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
            break;
        }
    }
    if (drawn.empty()) return {false, "no breaking mutation drawn"};
    return {true, "3 assignments pass both sides, associator gives c34 v5, mutation " + drawn + " fails both sides"};
}

Outcome criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    const bool d1 = is_hamiltonian(power(1, 1, 1)).ok;
    const bool d5 = is_hamiltonian(power(1, 5, 1)).ok;
    const bool id0 = is_hamiltonian(power(0, 0, -1)).ok;
    const bool d4 = is_hamiltonian(power(0, 4, -1)).ok;
    const bool pair = is_hamiltonian_pair(power(1, 1, 1), power(1, 5, 1)).ok;
    const double s = seconds_since(t0);
    const bool ok = d1 && d5 && id0 && d4 && pair && s < kConstantOperatorLimitSeconds;
    return {ok, "D, D^5, twisted 1, twisted D^4 Hamiltonian and (D, D^5) a pair in " + fixed(s) + " s (limit " +
                    fixed(kConstantOperatorLimitSeconds) + " s)"};
}

Outcome criterion5() {
    auto rng = testing_support::engine(501);
    const testing_support::PolyShape shape{3, 5, 4, 4};
    for (int trial = 0; trial < 200; ++trial) {
        auto du = apply_D(testing_support::random_polynomial(rng, shape));
        for (int a = 0; a < 3; ++a) {
            if (!variational_derivative(du, a).is_zero()) return {false, "delta o D nonzero on " + du.str()};
        }
    }
    const testing_support::PolyShape small{3, 4, 3, 3};
    for (int trial = 0; trial < 50; ++trial) {
        auto f = testing_support::random_field_of_parity(rng, small, trial % 2);
        std::vector<SuperPolynomial> probes;
        for (int k = 0; k < 3; ++k) probes.push_back(testing_support::random_polynomial(rng, small));
        if (!check_commutes_with_D(f, probes)) return {false, "an evolutionary field fails to commute with D"};
    }
    auto sign = [](int a, int b) { return Rational(a * b ? -1 : 1); };
    const testing_support::PolyShape tiny{2, 3, 2, 2};
    for (int trial = 0; trial < 50; ++trial) {
        const int pf = trial % 2, pg = (trial / 2) % 2, ph = (trial / 4) % 2;
        auto f = testing_support::random_field_of_parity(rng, tiny, pf);
        auto g = testing_support::random_field_of_parity(rng, tiny, pg);
        auto h = testing_support::random_field_of_parity(rng, tiny, ph);
        auto fg = evolutionary_bracket(f, g), gf = evolutionary_bracket(g, f);
        auto j1 = evolutionary_bracket(f, evolutionary_bracket(g, h));
        auto j2 = evolutionary_bracket(g, evolutionary_bracket(h, f));
        auto j3 = evolutionary_bracket(h, evolutionary_bracket(f, g));
        for (std::size_t a = 0; a < fg.dimension(); ++a) {
            if (fg.components()[a] != -sign(pf, pg) * gf.components()[a]) return {false, "bracket not graded skew"};
            auto total = sign(pf, ph) * j1.components()[a] + sign(pg, pf) * j2.components()[a] +
                         sign(ph, pg) * j3.components()[a];
            if (!total.is_zero()) return {false, "bracket fails graded Jacobi"};
        }
    }
    return {true, "delta o D = 0 on 200 polynomials, 50 fields commute with D, 50 bracket triples skew and Jacobi"};
}

Outcome criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    for (int n = 1; n <= 3; ++n) {
        auto induced = induce_bracket(super_virasoro_data(n), kInduceWindow);
        auto closed = super_virasoro_table(n, kInduceWindow);
        if (!(induced == closed)) return {false, "n=" + std::to_string(n) + ": induced table differs from closed form"};
        const auto c = Symbol::central();
        for (int m = -kInduceWindow; m <= kInduceWindow; ++m) {
            const int k = -m - 1;
            if (k >= -kInduceWindow && k <= kInduceWindow) {
                auto v = induced.bracket(ModeLabel::half(0, m), ModeLabel::half(0, k));
                if (v.coefficient(c) != Rational((k + 1) * k)) return {false, "half-integer central term"};
            }
            auto w = induced.bracket(ModeLabel::integer(0, m), ModeLabel::integer(0, -m));
            const int q = -m;
            if (w.coefficient(c) != Rational(-(q + 1) * q * (q - 1))) return {false, "integer central term"};
        }
        if (!check_super_skew(induced).ok) return {false, "n=" + std::to_string(n) + ": skew fails"};
        if (!check_super_jacobi(induced).ok) return {false, "n=" + std::to_string(n) + ": Jacobi fails"};
    }
    const double s = seconds_since(t0);
    return {s < kInduceLimitSeconds, "n=1..3, window " + std::to_string(kInduceWindow) +
                                         ": induced = closed form, skew and Jacobi hold, " + fixed(s) + " s (limit " +
                                         fixed(kInduceLimitSeconds) + " s)"};
}

Outcome criterion7() {
    const int M = kDeltaGuard;
    auto delta = make_delta(1, 2, M);
    std::map<int, Rational> f0{{1, Rational(1)}}, f1{{2, Rational(1)}};
    if (!(superfunction(1, f0, f1) * delta).equal_within(superfunction(2, f0, f1) * delta, M - 3)) {
        return {false, "f(theta1,z1) Delta != f(theta2,z2) Delta"};
    }
    for (int n = 0; n <= 2; ++n) {
        const int r = M - n - 2;
        auto el = apply_Di(delta, 1, 2 * n).shifted(2, -1);
        auto er = apply_Di(delta, 2, 2 * n).shifted(1, -1);
        if (el.equal_within(FormalDistribution(), r)) return {false, "empty interior"};
        if (!el.equal_within(Rational(n % 2 ? -1 : 1) * er, r)) return {false, "even identity fails at n=" + std::to_string(n)};
        auto ol = apply_Di(delta, 1, 2 * n + 1).shifted(2, -1);
        auto orr = apply_Di(delta, 2, 2 * n + 1).shifted(1, -1);
        if (!ol.equal_within(Rational((n + 1) % 2 ? -1 : 1) * orr, r)) {
            return {false, "odd identity fails at n=" + std::to_string(n)};
        }
    }
    return {true, "delta identities hold on interior exponents, M=" + std::to_string(M) + ", n=0,1,2"};
}

Outcome criterion8() {
    // Hand expansion of -D^6 Phi + 2 D^2(Phi D Phi) + 2 D Phi D^2 Phi.
    const SuperPolynomial fixture = -phi(7) + Rational(4) * phi(2) * phi(3) + Rational(2) * phi(1) * phi(4);
    const SuperPolynomial direct = -apply_D(phi(1), 6) + Rational(2) * apply_D(phi(1) * phi(2), 2) +
                                   Rational(2) * phi(2) * phi(3);
    auto rhs = evolution_rhs(super_kdv_operator(), super_kdv_density());
    const bool ok = rhs.size() == 1 && rhs[0] == fixture && direct == fixture;
    return {ok, "right-hand side " + (rhs.empty() ? std::string("?") : rhs[0].str()) + " (fixture " + fixture.str() + ")"};
}

Outcome criterion9() {
    std::vector<std::pair<std::string, MatrixDiffOperator>> ops;
    for (int n = 1; n <= 4; ++n) {
        ops.emplace_back("truncated n=" + std::to_string(n), build_type1_operator(np_to_nx(make_truncated_example(n))));
    }
    ops.emplace_back("mutated truncated", build_type1_operator(mutated_truncated()));
    for (std::size_t k = 0; k < exterior_assignments().size(); ++k) {
        ops.emplace_back("exterior " + std::to_string(k), build_type0_operator(make_exterior_example(exterior_assignments()[k])));
    }
    ops.emplace_back("D", power(1, 1, 1));
    ops.emplace_back("D^5", power(1, 5, 1));
    ops.emplace_back("twisted 1", power(0, 0, -1));
    ops.emplace_back("twisted D^4", power(0, 4, -1));
    std::size_t compared = 0;
    for (const auto& [name, H] : ops) {
        if (!check_skew_symmetry(H).ok) continue;
        ++compared;
        if (schouten_vanishes(H, H).ok != is_hamiltonian(H).ok) return {false, name + ": [H,H] disagrees with the defect test"};
    }
    auto rng = testing_support::engine(901);
    const bool pair = is_hamiltonian_pair(power(1, 1, 1), power(1, 5, 1)).ok;
    for (int trial = 0; trial < 5; ++trial) {
        const Rational a = testing_support::random_rational(rng), b = testing_support::random_rational(rng);
        const bool combo = is_hamiltonian(a * power(1, 1, 1) + b * power(1, 5, 1)).ok;
        if (combo != pair) return {false, "a D + b D^5 disagrees with the pair test"};
    }
    return {true, "[H,H] agrees with the defect test on " + std::to_string(compared) +
                      " skew operators; 5 combinations a D + b D^5 agree with the pair test"};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) testing_support::set_seed(std::stoull(argv[++i]));
    }
    std::cout << "seed " << testing_support::seed() << '\n';
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                            criterion6, criterion7, criterion8, criterion9};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failures;
        std::cout << "criterion " << k + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
