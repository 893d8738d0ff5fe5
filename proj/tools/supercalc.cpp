// supercalc: command-line front end for the algebra, operator and mode checks.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "supercalc/io.hpp"
#include "supercalc/suite.hpp"

using namespace supercalc;

namespace {

struct Globals {
    std::string report_path;
    RunOptions run;
};

[[noreturn]] void incompatible(const std::string& command, const InputDocument& doc) {
    throw std::invalid_argument("command '" + command + "' does not accept a document of kind '" + to_string(doc.kind()) +
                                "'");
}

MatrixDiffOperator operator_of(const std::string& command, const InputDocument& doc) {
    if (auto* H = std::get_if<MatrixDiffOperator>(&doc.payload)) return *H;
    if (auto* L = std::get_if<LinearOperatorData>(&doc.payload)) return L->realize();
    incompatible(command, doc);
}

Report error_report(const std::string& check, const std::string& message) {
    Report r;
    r.check = check;
    r.verdict = Verdict::error;
    r.output.push_back(message);
    return r;
}

int emit(const std::vector<Report>& reports, const Globals& g) {
    std::cout << render_human(reports);
    if (!g.report_path.empty()) {
        std::ofstream out(g.report_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write report to " << g.report_path << '\n';
            return 2;
        }
        out << render_json(reports);
    }
    return aggregate_exit_code(reports);
}

template <class F>
int run_guarded(const std::string& check, const Globals& g, F&& f) {
    std::vector<Report> reports;
    try {
        reports = f();
    } catch (const std::exception& e) {
        reports = {error_report(check, e.what())};
    }
    return emit(reports, g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for super Hamiltonian operators, Novikov-type algebras and induced Lie superalgebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--report", g.report_path, "Write a JSON report to this path");
    app.add_option("--jobs", g.run.jobs, "Worker threads for configuration scans")->check(CLI::Range(1u, 256u));
    app.add_option("--witness-limit", g.run.witness_limit, "Maximum number of witnesses per check")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
    app.add_option("--seed", g.run.seed, "Seed for randomized suite entries");
    app.add_flag("--timing", g.run.timing, "Include wall-clock seconds in reports");

    std::string cls_name, from_name, output_path, density_path;
    std::string file_a, file_b;
    int window = 4;

    auto* check_algebra = app.add_subcommand("check-algebra", "Check the defining identities of an algebra class");
    check_algebra->add_option("--class", cls_name, "novikov, novikov_super, nx_bialgebra, novikov_poisson, "
                                                   "fermionic_novikov or form_compat")
        ->required();
    check_algebra->add_option("file", file_a, "Algebra document")->required();

    auto* check_ham = app.add_subcommand("check-hamiltonian", "Test whether an operator is Hamiltonian");
    check_ham->add_option("file", file_a, "Operator or linear operator document")->required();

    auto* check_skew = app.add_subcommand("check-skew", "Test super skew-symmetry of an operator");
    check_skew->add_option("file", file_a, "Operator or linear operator document")->required();

    auto* schouten = app.add_subcommand("schouten", "Test whether the Schouten bracket [A,B] vanishes");
    schouten->add_option("A", file_a, "First operator")->required();
    schouten->add_option("B", file_b, "Second operator")->required();

    auto* pair = app.add_subcommand("pair", "Test whether two operators form a Hamiltonian pair");
    pair->add_option("A", file_a, "First operator")->required();
    pair->add_option("B", file_b, "Second operator")->required();

    auto* build = app.add_subcommand("build", "Build the Hamiltonian operator of an algebra");
    build->add_option("--from", from_name, "nx_bialgebra, novikov_poisson or fermionic_novikov")->required();
    build->add_option("--output", output_path, "Write the operator document here");
    build->add_option("file", file_a, "Algebra document")->required();

    auto* induce = app.add_subcommand("induce", "Induce the mode bracket table of a linear type-1 operator");
    induce->add_option("--window", window, "Largest |mode| in the table")->check(CLI::Range(1, 64));
    induce->add_option("file", file_a, "Linear operator document")->required();

    auto* evolution = app.add_subcommand("evolution", "Right-hand side of the evolution equation of a density");
    evolution->add_option("--density", density_path, "Density document")->required();
    evolution->add_option("file", file_a, "Operator document")->required();

    auto* verify = app.add_subcommand("verify-paper-examples", "Run the bundled reference suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*check_algebra) {
        return run_guarded("check-algebra", g, [&] {
            auto cls = parse_algebra_class(cls_name);
            if (!cls) throw std::invalid_argument("unknown algebra class '" + cls_name + "'");
            auto doc = parse_input(file_a);
            auto* spec = std::get_if<AlgebraSpec>(&doc.payload);
            if (!spec) incompatible("check-algebra", doc);
            return std::vector<Report>{algebra_report(*spec, *cls, g.run)};
        });
    }
    if (*check_ham) {
        return run_guarded("check-hamiltonian", g, [&] {
            return std::vector<Report>{hamiltonian_report(operator_of("check-hamiltonian", parse_input(file_a)), g.run)};
        });
    }
    if (*check_skew) {
        return run_guarded("check-skew", g, [&] {
            return std::vector<Report>{skew_report(operator_of("check-skew", parse_input(file_a)))};
        });
    }
    if (*schouten) {
        return run_guarded("schouten", g, [&] {
            return std::vector<Report>{schouten_report(operator_of("schouten", parse_input(file_a)),
                                                       operator_of("schouten", parse_input(file_b)), g.run)};
        });
    }
    if (*pair) {
        return run_guarded("pair", g, [&] {
            return std::vector<Report>{pair_report(operator_of("pair", parse_input(file_a)),
                                                   operator_of("pair", parse_input(file_b)), g.run)};
        });
    }
    if (*build) {
        return run_guarded("build", g, [&] {
            auto cls = parse_algebra_class(from_name);
            if (!cls || (*cls != AlgebraClass::nx_bialgebra && *cls != AlgebraClass::novikov_poisson &&
                         *cls != AlgebraClass::fermionic_novikov)) {
                throw std::invalid_argument("--from must be nx_bialgebra, novikov_poisson or fermionic_novikov");
            }
            auto doc = parse_input(file_a);
            auto* spec = std::get_if<AlgebraSpec>(&doc.payload);
            if (!spec) incompatible("build", doc);
            Report r = algebra_report(*spec, *cls, g.run);
            r.check = "build";
            if (r.verdict != Verdict::pass) return std::vector<Report>{r};
            MatrixDiffOperator H = *cls == AlgebraClass::fermionic_novikov ? build_type0_operator(*spec)
                                   : *cls == AlgebraClass::novikov_poisson ? build_type1_operator(np_to_nx(*spec))
                                                                           : build_type1_operator(*spec);
            InputDocument out;
            out.payload = H;
            const std::string text = render(out);
            if (output_path.empty()) {
                std::istringstream lines(text);
                for (std::string line; std::getline(lines, line);) r.output.push_back(line);
            } else {
                std::ofstream f(output_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot write " + output_path);
                f << text;
                r.output.push_back("operator written to " + output_path);
            }
            return std::vector<Report>{r};
        });
    }
    if (*induce) {
        return run_guarded("induce", g, [&] {
            auto doc = parse_input(file_a);
            auto* data = std::get_if<LinearOperatorData>(&doc.payload);
            if (!data) incompatible("induce", doc);
            return std::vector<Report>{induce_report(*data, window, g.run)};
        });
    }
    if (*evolution) {
        return run_guarded("evolution", g, [&] {
            auto dens = parse_input(density_path);
            auto* L = std::get_if<DensityDocument>(&dens.payload);
            if (!L) incompatible("evolution --density", dens);
            auto H = operator_of("evolution", parse_input(file_a));
            if (L->dimension != H.dimension()) throw std::invalid_argument("density and operator dimensions differ");
            return std::vector<Report>{evolution_report(H, L->density)};
        });
    }
    if (*verify) {
        return run_guarded("verify-paper-examples", g, [&] { return reference_suite(g.run); });
    }
    return 2;
}
