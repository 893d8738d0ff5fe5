#include "supercalc/suite.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "supercalc/calculus.hpp"

namespace supercalc {

namespace {

class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    void stamp(Report& r) const {
        if (!enabled_) return;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

std::string vector_str(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + ")";
}

Witness axiom_witness(const AxiomWitness& w) {
    return {w.identity,
            {{"i", std::to_string(w.i)}, {"j", std::to_string(w.j)}, {"k", std::to_string(w.k)}},
            vector_str(w.residual)};
}

Witness skew_witness(const SkewWitness& w) {
    return {"skew-symmetry (" + w.condition + ")",
            {{"row", std::to_string(w.p)}, {"col", std::to_string(w.q)}, {"power", std::to_string(w.power)}},
            w.residual.str()};
}

Witness configuration_witness(const std::string& label, const ConfigurationFailure& f) {
    return {label, {{"configuration", f.config.str()}, {"generator", f.offending_generator}}, f.residual.str()};
}

Witness mode_witness(const std::string& label, const ModeWitness& w) {
    Witness out{label, {}, w.residual.str()};
    for (std::size_t i = 0; i < w.modes.size(); ++i) out.fields.emplace_back("mode" + std::to_string(i + 1), w.modes[i].str());
    return out;
}

void echo_operator(Report& r, const MatrixDiffOperator& H, const std::string& prefix = "") {
    r.config.emplace_back(prefix + "type", std::to_string(H.type()));
    r.config.emplace_back(prefix + "dimension", std::to_string(H.dimension()));
}

CheckOptions check_options(const RunOptions& o) { return {o.jobs, o.witness_limit}; }

std::vector<std::string> table_lines(const ModeBracketTable& t) {
    std::vector<std::string> out;
    for (const auto& [key, v] : t.entries()) {
        if (v.is_zero()) continue;
        out.push_back("[" + key.first.str() + ", " + key.second.str() + "] = " + v.str());
    }
    return out;
}

Report with_expectation(Report r, const std::string& name, Verdict expected) {
    r.check = name;
    r.expected = expected;
    return r;
}

Report error_report(const std::string& name, const std::exception& e) {
    Report r;
    r.check = name;
    r.verdict = Verdict::error;
    r.output.push_back(e.what());
    return r;
}

}  // namespace

Report algebra_report(const AlgebraSpec& spec, AlgebraClass cls, const RunOptions& options) {
    Stopwatch sw(options.timing);
    Report r;
    r.check = "check-algebra";
    r.config = {{"class", to_string(cls)}, {"dimension", std::to_string(spec.dimension)}};
    auto fails = failing_identities(spec, cls);
    r.verdict = verdict_of(fails.empty());
    for (std::size_t n = 0; n < fails.size() && n < options.witness_limit; ++n) r.witnesses.push_back(axiom_witness(fails[n]));
    sw.stamp(r);
    return r;
}

Report skew_report(const MatrixDiffOperator& H) {
    Report r;
    r.check = "check-skew";
    echo_operator(r, H);
    auto res = check_skew_symmetry(H);
    r.verdict = verdict_of(res.ok);
    if (res.witness) r.witnesses.push_back(skew_witness(*res.witness));
    return r;
}

Report hamiltonian_report(const MatrixDiffOperator& H, const RunOptions& options) {
    Stopwatch sw(options.timing);
    Report r;
    r.check = "check-hamiltonian";
    echo_operator(r, H);
    auto res = is_hamiltonian(H, check_options(options));
    r.verdict = verdict_of(res.ok);
    if (res.skew_failure) r.witnesses.push_back(skew_witness(*res.skew_failure));
    for (const auto& f : res.failures) r.witnesses.push_back(configuration_witness("defect is not a total derivative", f));
    r.config.emplace_back("configurations_checked", std::to_string(res.configurations_checked));
    sw.stamp(r);
    return r;
}

Report schouten_report(const MatrixDiffOperator& A, const MatrixDiffOperator& B, const RunOptions& options) {
    Stopwatch sw(options.timing);
    Report r;
    r.check = "schouten";
    echo_operator(r, A, "A.");
    echo_operator(r, B, "B.");
    auto res = schouten_vanishes(A, B, check_options(options));
    r.verdict = verdict_of(res.ok);
    for (const auto& f : res.failures) r.witnesses.push_back(configuration_witness("[A,B] is not a total derivative", f));
    r.config.emplace_back("configurations_checked", std::to_string(res.configurations_checked));
    sw.stamp(r);
    return r;
}

Report pair_report(const MatrixDiffOperator& A, const MatrixDiffOperator& B, const RunOptions& options) {
    Stopwatch sw(options.timing);
    Report r;
    r.check = "pair";
    echo_operator(r, A, "A.");
    echo_operator(r, B, "B.");
    auto res = is_hamiltonian_pair(A, B, check_options(options));
    r.verdict = verdict_of(res.ok);
    for (const auto& f : res.failures) {
        r.witnesses.push_back(configuration_witness(res.failed_bracket + " is not a total derivative", f));
    }
    sw.stamp(r);
    return r;
}

Report induce_report(const LinearOperatorData& data, int window, const RunOptions& options) {
    Stopwatch sw(options.timing);
    Report r;
    r.check = "induce";
    r.config = {{"N", std::to_string(data.N)}, {"dimension", std::to_string(data.dimension)}, {"window", std::to_string(window)}};
    auto table = induce_bracket(data, window);
    auto skew = check_super_skew(table);
    auto jac = check_super_jacobi(table);
    r.verdict = verdict_of(skew.ok && jac.ok);
    if (skew.witness) r.witnesses.push_back(mode_witness("super skew-symmetry", *skew.witness));
    if (jac.witness) r.witnesses.push_back(mode_witness("super Jacobi identity", *jac.witness));
    r.output = table_lines(table);
    sw.stamp(r);
    return r;
}

Report evolution_report(const MatrixDiffOperator& H, const SuperPolynomial& density) {
    Report r;
    r.check = "evolution";
    echo_operator(r, H);
    r.config.emplace_back("density", density.str());
    auto rhs = evolution_rhs(H, density);
    for (std::size_t a = 0; a < rhs.size(); ++a) {
        r.output.push_back("(Phi" + std::to_string(a) + ")_t = " + (rhs[a].is_zero() ? std::string("0") : rhs[a].str()));
    }
    return r;
}

MatrixDiffOperator super_kdv_operator() {
    const auto phi = [](int n) { return SuperPolynomial::of(Generator::field(0, n)); };
    ScalarDiffOperator op;
    op.add_term(5, SuperPolynomial::constant(-1));
    op.add_term(2, Rational(2) * phi(1));
    op.add_term(1, Rational(2) * phi(2));
    op.add_term(0, Rational(2) * phi(3));
    MatrixDiffOperator H(1, 1);
    H.set_both(0, 0, op);
    return H;
}

SuperPolynomial super_kdv_density() {
    return Rational(1, 2) * SuperPolynomial::of(Generator::field(0, 1)) * SuperPolynomial::of(Generator::field(0, 2));
}

namespace {

MatrixDiffOperator power_operator(int type, int power, int odd_sign) {
    ScalarDiffOperator op;
    op.add_term(power, SuperPolynomial::one());
    MatrixDiffOperator H(type, 1);
    H.set_both(0, 0, op, odd_sign);
    return H;
}

template <class F>
Report guarded(const std::string& name, Verdict expected, F&& f) {
    try {
        return with_expectation(f(), name, expected);
    } catch (const std::exception& e) {
        return with_expectation(error_report(name, e), name, expected);
    }
}

}  // namespace

std::vector<Report> reference_suite(const RunOptions& options) {
    std::vector<Report> out;
    const Verdict pass = Verdict::pass;

    for (int n = 1; n <= 4; ++n) {
        const auto np = make_truncated_example(n);
        const std::string tag = "truncated n=" + std::to_string(n);
        out.push_back(guarded(tag + ": Novikov-Poisson axioms", pass,
                              [&] { return algebra_report(np, AlgebraClass::novikov_poisson, options); }));
        const auto spec = np_to_nx(np);
        out.push_back(guarded(tag + ": NX-bialgebra axioms", pass,
                              [&] { return algebra_report(spec, AlgebraClass::nx_bialgebra, options); }));
        out.push_back(guarded(tag + ": form compatibility", pass,
                              [&] { return algebra_report(spec, AlgebraClass::form_compat, options); }));
        out.push_back(guarded(tag + ": type-1 operator is Hamiltonian", pass,
                              [&] { return hamiltonian_report(build_type1_operator(spec), options); }));
    }

    {
        auto spec = np_to_nx(make_truncated_example(1));
        spec.circ->at(0, 0, 0) = Rational(3);
        out.push_back(guarded("mutated truncated n=1 (e0 o e0 = 3 e0): NX-bialgebra axioms", Verdict::fail,
                              [&] { return algebra_report(spec, AlgebraClass::nx_bialgebra, options); }));
        out.push_back(guarded("mutated truncated n=1 (e0 o e0 = 3 e0): type-1 operator is Hamiltonian", Verdict::fail,
                              [&] { return hamiltonian_report(build_type1_operator(spec), options); }));
    }

    const std::vector<std::pair<std::string, std::map<std::pair<int, int>, Rational>>> assignments = {
        {"all c = 0", {}},
        {"c34 = 1", {{{3, 4}, Rational(1)}}},
        {"c12 = 2, c34 = -1", {{{1, 2}, Rational(2)}, {{3, 4}, Rational(-1)}}},
    };
    for (const auto& [label, c] : assignments) {
        const auto spec = make_exterior_example(c);
        const std::string tag = "exterior example (" + label + ")";
        out.push_back(guarded(tag + ": fermionic Novikov axioms", pass,
                              [&] { return algebra_report(spec, AlgebraClass::fermionic_novikov, options); }));
        out.push_back(guarded(tag + ": type-0 operator is Hamiltonian", pass,
                              [&] { return hamiltonian_report(build_type0_operator(spec), options); }));
    }

    {
        auto spec = make_exterior_example({{{3, 4}, Rational(1)}});
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::size_t> pick(0, spec.dimension - 1);
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        spec.circ->at(i, j, k) += Rational(1);
        const std::string name = "exterior example, mutated circ entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 "," + std::to_string(k) + "): verdicts agree";
        out.push_back(guarded(name, pass, [&] {
            auto alg = algebra_report(spec, AlgebraClass::fermionic_novikov, options);
            auto ham = hamiltonian_report(build_type0_operator(spec), options);
            Report r;
            r.verdict = verdict_of(alg.verdict == ham.verdict);
            r.output = {"fermionic Novikov axioms: " + to_string(alg.verdict),
                        "type-0 operator is Hamiltonian: " + to_string(ham.verdict)};
            return r;
        }));
    }

    out.push_back(guarded("D (type 1) is Hamiltonian", pass,
                          [&] { return hamiltonian_report(power_operator(1, 1, 1), options); }));
    out.push_back(guarded("D^5 (type 1) is Hamiltonian", pass,
                          [&] { return hamiltonian_report(power_operator(1, 5, 1), options); }));
    out.push_back(guarded("sign-twisted identity (type 0) is Hamiltonian", pass,
                          [&] { return hamiltonian_report(power_operator(0, 0, -1), options); }));
    out.push_back(guarded("sign-twisted D^4 (type 0) is Hamiltonian", pass,
                          [&] { return hamiltonian_report(power_operator(0, 4, -1), options); }));
    out.push_back(guarded("(D, D^5) is a Hamiltonian pair", pass,
                          [&] { return pair_report(power_operator(1, 1, 1), power_operator(1, 5, 1), options); }));

    for (int n = 1; n <= 3; ++n) {
        const int W = 4;
        out.push_back(guarded("super-Virasoro n=" + std::to_string(n) + ", window 4: induced table", pass, [&] {
            auto r = induce_report(super_virasoro_data(n), W, options);
            const bool same = induce_bracket(super_virasoro_data(n), W) == super_virasoro_table(n, W);
            r.output.insert(r.output.begin(), std::string("matches closed form: ") + (same ? "yes" : "no"));
            if (!same) r.verdict = Verdict::fail;
            return r;
        }));
    }

    out.push_back(guarded("super-KdV right-hand side", pass, [&] {
        auto r = evolution_report(super_kdv_operator(), super_kdv_density());
        const auto phi = [](int n) { return SuperPolynomial::of(Generator::field(0, n)); };
        const auto expected = -phi(7) + Rational(4) * phi(2) * phi(3) + Rational(2) * phi(1) * phi(4);
        if (evolution_rhs(super_kdv_operator(), super_kdv_density()).at(0) != expected) {
            r.verdict = Verdict::fail;
            r.output.push_back("expected (Phi0)_t = " + expected.str());
        }
        return r;
    }));

    return out;
}

}  // namespace supercalc
