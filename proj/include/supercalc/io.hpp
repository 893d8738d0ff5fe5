#pragma once

// JSON input documents and check reports.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "supercalc/algebra.hpp"
#include "supercalc/diff_operator.hpp"
#include "supercalc/modes.hpp"
#include "supercalc/polynomial.hpp"

namespace supercalc {

/// Parses the canonical rendering, e.g. "2*Phi0(3) - 1/2*Phi1(1)*Phi1(2)^2"
/// or "xi1o_0(2)". Throws std::invalid_argument with the offending column.
SuperPolynomial parse_polynomial(std::string_view text);

class ParseError : public std::runtime_error {
public:
    ParseError(std::string location, const std::string& message)
        : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
    /// "line L, column C" for syntax errors, a JSON pointer for field errors.
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

struct DensityDocument {
    std::size_t dimension = 1;
    SuperPolynomial density;
    friend bool operator==(const DensityDocument&, const DensityDocument&) = default;
};

enum class DocumentKind { algebra, op, linear_operator, density };

std::string to_string(DocumentKind k);

struct InputDocument {
    int format = 1;
    std::variant<AlgebraSpec, MatrixDiffOperator, LinearOperatorData, DensityDocument> payload;

    DocumentKind kind() const { return static_cast<DocumentKind>(payload.index()); }
    friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

InputDocument parse_document(std::string_view text);
/// Reads and parses a file; unreadable files raise ParseError too.
InputDocument parse_input(const std::string& path);
/// Canonical JSON text; parse_document(render(d)) == d.
std::string render(const InputDocument& doc);

enum class Verdict { pass, fail, error };
std::string to_string(Verdict v);
int exit_code(Verdict v);

struct Witness {
    std::string label;
    std::vector<std::pair<std::string, std::string>> fields;
    std::string residual;
};

struct Report {
    std::string check;
    Verdict verdict = Verdict::pass;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<Witness> witnesses;
    /// Free-form result lines (tables, right-hand sides, messages).
    std::vector<std::string> output;
    std::optional<double> seconds;
    /// For suite entries: the verdict the entry is expected to produce.
    std::optional<Verdict> expected;
};

std::string render_human(const std::vector<Report>& reports);
std::string render_json(const std::vector<Report>& reports);

/// Overall exit status: 0 if every report matches its expectation
/// (pass when none is given), 2 if any report errored, 1 otherwise.
int aggregate_exit_code(const std::vector<Report>& reports);

}  // namespace supercalc
