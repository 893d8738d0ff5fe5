#include "supercalc/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace supercalc {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Polynomial text

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    SuperPolynomial parse() {
        SuperPolynomial out;
        skip();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            out += term() * Rational(sign);
            skip();
        }
        return out;
    }

private:
    SuperPolynomial term() {
        Rational coeff(1);
        std::vector<Generator> seq;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = rational();
            skip();
            if (peek() != '*') return SuperPolynomial::constant(coeff);
            ++pos_;
            skip();
        }
        for (;;) {
            Generator g = generator();
            unsigned e = 1;
            skip();
            if (peek() == '^') {
                ++pos_;
                skip();
                e = static_cast<unsigned>(integer());
                if (e == 0) fail("exponent must be positive");
                skip();
            }
            seq.insert(seq.end(), e, g);
            if (peek() != '*') break;
            ++pos_;
            skip();
        }
        return SuperPolynomial::product(seq, coeff);
    }

    Generator generator() {
        if (s_.substr(pos_, 3) == "Phi") {
            pos_ += 3;
            long fam = integer();
            expect('(');
            long order = integer();
            expect(')');
            if (order < 1) fail("field order must be at least 1");
            return Generator::field(static_cast<int>(fam), static_cast<int>(order));
        }
        if (s_.substr(pos_, 2) == "xi") {
            pos_ += 2;
            long slot = integer();
            if (slot < 1 || slot > 3) fail("covector slot must be 1, 2 or 3");
            char p = peek();
            if (p != 'e' && p != 'o') fail("expected 'e' or 'o' after the covector slot");
            ++pos_;
            expect('_');
            long fam = integer();
            expect('(');
            long k = integer();
            expect(')');
            return Generator::covector(static_cast<int>(slot), static_cast<int>(fam), static_cast<int>(k), p == 'o');
        }
        fail("expected a generator (Phi<a>(<n>) or xi<s><e|o>_<a>(<k>))");
    }

    Rational rational() {
        std::size_t start = pos_;
        integer();
        if (peek() == '/') {
            ++pos_;
            integer();
        }
        try {
            return Rational::parse(s_.substr(start, pos_ - start));
        } catch (const std::invalid_argument& e) {
            pos_ = start;
            fail(e.what());
        }
    }

    long integer() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a number");
        if (pos_ - start > 9) fail("number too large");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

SuperPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

// ---------------------------------------------------------------------------
// Documents

std::string to_string(DocumentKind k) {
    switch (k) {
        case DocumentKind::algebra: return "algebra";
        case DocumentKind::op: return "operator";
        case DocumentKind::linear_operator: return "linear_operator";
        case DocumentKind::density: return "density";
    }
    return "unknown";
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
    throw ParseError("field " + (path.empty() ? std::string("/") : path), msg);
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) field_error(path + "/" + key, "missing");
    return *it;
}

long as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) field_error(path, "expected an integer");
    return v.get<long>();
}

std::size_t as_index(const json& v, const std::string& path, std::size_t bound) {
    long x = as_int(v, path);
    if (x < 0 || static_cast<std::size_t>(x) >= bound) {
        field_error(path, "index " + std::to_string(x) + " out of range 0.." + std::to_string(bound - 1));
    }
    return static_cast<std::size_t>(x);
}

Rational as_rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) field_error(path, "expected a rational string such as \"3/4\"");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        field_error(path, e.what());
    }
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) field_error(path, "expected an array");
    return v;
}

std::size_t read_dimension(const json& doc) {
    long d = as_int(require(doc, "", "dimension"), "/dimension");
    if (d < 1 || d > 64) field_error("/dimension", "dimension must be between 1 and 64");
    return static_cast<std::size_t>(d);
}

StructureTensor read_tensor(const json& v, const std::string& path, std::size_t d) {
    StructureTensor t(d);
    const auto& arr = as_array(v, path);
    for (std::size_t n = 0; n < arr.size(); ++n) {
        const std::string p = path + "/" + std::to_string(n);
        const auto& e = as_array(arr[n], p);
        if (e.size() != 4) field_error(p, "expected [i, j, k, value]");
        auto i = as_index(e[0], p + "/0", d);
        auto j = as_index(e[1], p + "/1", d);
        auto k = as_index(e[2], p + "/2", d);
        t.at(i, j, k) += as_rational(e[3], p + "/3");
    }
    return t;
}

AlgebraSpec read_algebra(const json& doc) {
    AlgebraSpec s;
    s.dimension = read_dimension(doc);
    const std::size_t d = s.dimension;
    if (doc.contains("circ")) s.circ = read_tensor(doc["circ"], "/circ", d);
    if (doc.contains("times")) s.times = read_tensor(doc["times"], "/times", d);
    if (doc.contains("dot")) s.dot = read_tensor(doc["dot"], "/dot", d);
    if (doc.contains("form")) {
        Form f(d, std::vector<Rational>(d));
        const auto& arr = as_array(doc["form"], "/form");
        for (std::size_t n = 0; n < arr.size(); ++n) {
            const std::string p = "/form/" + std::to_string(n);
            const auto& e = as_array(arr[n], p);
            if (e.size() != 3) field_error(p, "expected [i, j, value]");
            f[as_index(e[0], p + "/0", d)][as_index(e[1], p + "/1", d)] += as_rational(e[2], p + "/2");
        }
        s.form = std::move(f);
    }
    if (doc.contains("grading")) {
        const auto& arr = as_array(doc["grading"], "/grading");
        if (arr.size() != d) field_error("/grading", "expected one parity per basis vector");
        std::vector<int> g;
        for (std::size_t n = 0; n < d; ++n) {
            long x = as_int(arr[n], "/grading/" + std::to_string(n));
            if (x != 0 && x != 1) field_error("/grading/" + std::to_string(n), "parity must be 0 or 1");
            g.push_back(static_cast<int>(x));
        }
        s.grading = std::move(g);
    }
    if (doc.contains("identity")) s.identity = as_index(doc["identity"], "/identity", d);
    return s;
}

void check_families(const SuperPolynomial& p, std::size_t d, const std::string& path) {
    for (const auto& g : p.generators()) {
        if (g.family >= d) field_error(path, "generator " + g.str() + " is outside the declared dimension");
        if (!g.is_field()) field_error(path, "only field generators may appear here");
    }
}

SuperPolynomial read_polynomial(const json& v, const std::string& path) {
    if (!v.is_string()) field_error(path, "expected a polynomial string");
    try {
        return parse_polynomial(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        field_error(path, e.what());
    }
}

void read_block(const json& arr, const std::string& path, MatrixDiffOperator& H, int block) {
    const std::size_t d = H.dimension();
    as_array(arr, path);
    for (std::size_t n = 0; n < arr.size(); ++n) {
        const std::string p = path + "/" + std::to_string(n);
        const auto& e = arr[n];
        if (!e.is_object()) field_error(p, "expected an object with row, col, power, coefficient");
        auto row = as_index(require(e, p, "row"), p + "/row", d);
        auto col = as_index(require(e, p, "col"), p + "/col", d);
        long power = as_int(require(e, p, "power"), p + "/power");
        if (power < 0 || power > 64) field_error(p + "/power", "power must be between 0 and 64");
        auto c = read_polynomial(require(e, p, "coefficient"), p + "/coefficient");
        check_families(c, d, p + "/coefficient");
        H.entry(block, row, col).add_term(static_cast<int>(power), c);
    }
}

MatrixDiffOperator read_operator(const json& doc) {
    long type = as_int(require(doc, "", "type"), "/type");
    if (type != 0 && type != 1) field_error("/type", "type must be 0 or 1");
    MatrixDiffOperator H(static_cast<int>(type), read_dimension(doc));
    read_block(require(doc, "", "even"), "/even", H, 0);
    const json& odd = require(doc, "", "odd");
    if (odd.is_string()) {
        const auto mode = odd.get<std::string>();
        if (mode != "same" && mode != "negated") field_error("/odd", "expected an entry list, \"same\" or \"negated\"");
        for (std::size_t p = 0; p < H.dimension(); ++p) {
            for (std::size_t q = 0; q < H.dimension(); ++q) {
                H.entry(1, p, q) = mode == "same" ? H.entry(0, p, q) : -H.entry(0, p, q);
            }
        }
    } else {
        read_block(odd, "/odd", H, 1);
    }
    if (auto err = H.validate()) field_error("/", *err);
    return H;
}

LinearOperatorData read_linear(const json& doc) {
    long N = as_int(require(doc, "", "N"), "/N");
    if (N < 1 || N > 16) field_error("/N", "N must be between 1 and 16");
    LinearOperatorData data(static_cast<int>(N), read_dimension(doc));
    const std::size_t d = data.dimension;
    auto table = [&](const char* key, int count, bool is_a) {
        const std::string path = std::string("/") + key;
        if (!doc.contains(key)) return;
        const auto& arr = as_array(doc[key], path);
        for (std::size_t n = 0; n < arr.size(); ++n) {
            const std::string p = path + "/" + std::to_string(n);
            const auto& e = as_array(arr[n], p);
            if (e.size() != 5) field_error(p, "expected [order, alpha, beta, gamma, value]");
            auto m = as_index(e[0], p + "/0", static_cast<std::size_t>(count));
            auto al = as_index(e[1], p + "/1", d);
            auto be = as_index(e[2], p + "/2", d);
            auto ga = as_index(e[3], p + "/3", d);
            Rational v = as_rational(e[4], p + "/4");
            (is_a ? data.a_at(static_cast<int>(m), al, be, ga) : data.b_at(static_cast<int>(m), al, be, ga)) += v;
        }
    };
    table("a", data.N + 1, true);
    table("b", data.N, false);
    if (doc.contains("central")) {
        const json& c = doc["central"];
        if (!c.is_object()) field_error("/central", "expected an object with power and kappa");
        long power = as_int(require(c, "/central", "power"), "/central/power");
        if (power < 0 || power > 64) field_error("/central/power", "power must be between 0 and 64");
        std::vector<std::vector<Rational>> k(d, std::vector<Rational>(d));
        const auto& arr = as_array(require(c, "/central", "kappa"), "/central/kappa");
        for (std::size_t n = 0; n < arr.size(); ++n) {
            const std::string p = "/central/kappa/" + std::to_string(n);
            const auto& e = as_array(arr[n], p);
            if (e.size() != 3) field_error(p, "expected [alpha, beta, value]");
            k[as_index(e[0], p + "/0", d)][as_index(e[1], p + "/1", d)] += as_rational(e[2], p + "/2");
        }
        data.set_central(static_cast<int>(power), std::move(k));
    }
    if (auto err = data.realize().validate()) field_error("/", *err);
    return data;
}

DensityDocument read_density(const json& doc) {
    DensityDocument out;
    out.dimension = read_dimension(doc);
    out.density = read_polynomial(require(doc, "", "density"), "/density");
    check_families(out.density, out.dimension, "/density");
    return out;
}

std::string location_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

InputDocument parse_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        auto cut = msg.find("syntax error");
        throw ParseError(location_of(text, e.byte > 0 ? e.byte - 1 : 0),
                         cut == std::string::npos ? msg : msg.substr(cut));
    }
    if (!doc.is_object()) field_error("", "document must be a JSON object");
    InputDocument out;
    out.format = static_cast<int>(as_int(require(doc, "", "format"), "/format"));
    if (out.format != 1) field_error("/format", "unsupported format version " + std::to_string(out.format));
    const json& kind = require(doc, "", "kind");
    if (!kind.is_string()) field_error("/kind", "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "algebra") {
        out.payload = read_algebra(doc);
    } else if (k == "operator") {
        out.payload = read_operator(doc);
    } else if (k == "linear_operator") {
        out.payload = read_linear(doc);
    } else if (k == "density") {
        out.payload = read_density(doc);
    } else {
        field_error("/kind", "unknown kind '" + k + "'");
    }
    return out;
}

InputDocument parse_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_document(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ", " + e.location(), std::string(e.what()).substr(e.location().size() + 2));
    }
}

namespace {

ordered_json tensor_json(const StructureTensor& t) {
    ordered_json arr = ordered_json::array();
    const std::size_t d = t.dimension();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (!t.at(i, j, k).is_zero()) arr.push_back(ordered_json::array({i, j, k, t.at(i, j, k).str()}));
    return arr;
}

ordered_json block_json(const MatrixDiffOperator& H, int block) {
    ordered_json arr = ordered_json::array();
    for (std::size_t p = 0; p < H.dimension(); ++p) {
        for (std::size_t q = 0; q < H.dimension(); ++q) {
            for (const auto& [l, c] : H.entry(block, p, q).terms()) {
                ordered_json e;
                e["row"] = p;
                e["col"] = q;
                e["power"] = l;
                e["coefficient"] = c.str();
                arr.push_back(e);
            }
        }
    }
    return arr;
}

bool is_flat(const ordered_json& j) {
    if (j.is_array()) {
        for (const auto& e : j) if (e.is_structured()) return false;
        return true;
    }
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) if (v.is_structured()) return false;
        return true;
    }
    return true;
}

// Two-space indentation, with flat arrays and objects kept on one line.
void pretty(std::ostream& os, const ordered_json& j, int indent) {
    if (is_flat(j)) {
        if (j.is_object() && !j.empty()) {
            os << '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                os << (first ? "" : ", ") << ordered_json(k).dump() << ": " << v.dump();
                first = false;
            }
            os << '}';
        } else if (j.is_array() && !j.empty()) {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
            os << ']';
        } else {
            os << j.dump();
        }
        return;
    }
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_array()) {
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << pad;
            pretty(os, j[i], indent + 2);
            os << (i + 1 < j.size() ? ",\n" : "\n");
        }
        os << std::string(static_cast<std::size_t>(indent), ' ') << ']';
        return;
    }
    os << "{\n";
    std::size_t n = 0;
    for (const auto& [k, v] : j.items()) {
        os << pad << ordered_json(k).dump() << ": ";
        pretty(os, v, indent + 2);
        os << (++n < j.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << '}';
}

std::string pretty(const ordered_json& j) {
    std::ostringstream os;
    pretty(os, j, 0);
    os << '\n';
    return os.str();
}

}  // namespace

std::string render(const InputDocument& doc) {
    ordered_json j;
    j["format"] = doc.format;
    j["kind"] = to_string(doc.kind());
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, AlgebraSpec>) {
                j["dimension"] = p.dimension;
                if (p.circ) j["circ"] = tensor_json(*p.circ);
                if (p.times) j["times"] = tensor_json(*p.times);
                if (p.dot) j["dot"] = tensor_json(*p.dot);
                if (p.form) {
                    ordered_json arr = ordered_json::array();
                    for (std::size_t a = 0; a < p.dimension; ++a)
                        for (std::size_t b = 0; b < p.dimension; ++b)
                            if (!(*p.form)[a][b].is_zero()) arr.push_back(ordered_json::array({a, b, (*p.form)[a][b].str()}));
                    j["form"] = arr;
                }
                if (p.grading) j["grading"] = *p.grading;
                if (p.identity) j["identity"] = *p.identity;
            } else if constexpr (std::is_same_v<T, MatrixDiffOperator>) {
                j["type"] = p.type();
                j["dimension"] = p.dimension();
                j["even"] = block_json(p, 0);
                j["odd"] = block_json(p, 1);
            } else if constexpr (std::is_same_v<T, LinearOperatorData>) {
                j["N"] = p.N;
                j["dimension"] = p.dimension;
                const std::size_t d = p.dimension;
                auto table = [&](int count, bool is_a) {
                    ordered_json arr = ordered_json::array();
                    for (int m = 0; m < count; ++m)
                        for (std::size_t a = 0; a < d; ++a)
                            for (std::size_t b = 0; b < d; ++b)
                                for (std::size_t g = 0; g < d; ++g) {
                                    const Rational& v = is_a ? p.a_at(m, a, b, g) : p.b_at(m, a, b, g);
                                    if (!v.is_zero()) arr.push_back(ordered_json::array({m, a, b, g, v.str()}));
                                }
                    return arr;
                };
                j["a"] = table(p.N + 1, true);
                j["b"] = table(p.N, false);
                if (p.kappa) {
                    ordered_json c;
                    c["power"] = p.central_power;
                    ordered_json arr = ordered_json::array();
                    for (std::size_t a = 0; a < d; ++a)
                        for (std::size_t b = 0; b < d; ++b)
                            if (!(*p.kappa)[a][b].is_zero()) arr.push_back(ordered_json::array({a, b, (*p.kappa)[a][b].str()}));
                    c["kappa"] = arr;
                    j["central"] = c;
                }
            } else {
                j["dimension"] = p.dimension;
                j["density"] = p.density.str();
            }
        },
        doc.payload);
    return pretty(j);
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::error: return "error";
    }
    return "error";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return 0;
        case Verdict::fail: return 1;
        case Verdict::error: return 2;
    }
    return 2;
}

int aggregate_exit_code(const std::vector<Report>& reports) {
    int code = 0;
    for (const auto& r : reports) {
        Verdict want = r.expected.value_or(Verdict::pass);
        if (r.verdict == want) continue;
        code = std::max(code, r.verdict == Verdict::error ? 2 : 1);
    }
    return code;
}

namespace {

std::string seconds_str(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s;
    return os.str();
}

}  // namespace

std::string render_human(const std::vector<Report>& reports) {
    std::ostringstream os;
    for (const auto& r : reports) {
        os << r.check << ": " << to_string(r.verdict);
        if (r.expected) os << " (expected " << to_string(*r.expected) << ')';
        if (r.seconds) os << " [" << seconds_str(*r.seconds) << " s]";
        os << '\n';
        for (const auto& [k, v] : r.config) os << "  " << k << " = " << v << '\n';
        for (const auto& w : r.witnesses) {
            os << "  witness: " << w.label;
            for (const auto& [k, v] : w.fields) os << ", " << k << " = " << v;
            os << '\n';
            if (!w.residual.empty()) os << "    residual: " << w.residual << '\n';
        }
        for (const auto& line : r.output) os << "  " << line << '\n';
    }
    return os.str();
}

std::string render_json(const std::vector<Report>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json j;
        j["check"] = r.check;
        j["verdict"] = to_string(r.verdict);
        if (r.expected) j["expected"] = to_string(*r.expected);
        ordered_json cfg = ordered_json::object();
        for (const auto& [k, v] : r.config) cfg[k] = v;
        j["config"] = cfg;
        ordered_json ws = ordered_json::array();
        for (const auto& w : r.witnesses) {
            ordered_json wj;
            wj["label"] = w.label;
            ordered_json f = ordered_json::object();
            for (const auto& [k, v] : w.fields) f[k] = v;
            wj["indices"] = f;
            wj["residual"] = w.residual;
            ws.push_back(wj);
        }
        j["witnesses"] = ws;
        j["output"] = r.output;
        if (r.seconds) j["seconds"] = *r.seconds;
        arr.push_back(j);
    }
    ordered_json top;
    top["reports"] = arr;
    top["exit_code"] = aggregate_exit_code(reports);
    return pretty(top);
}

}  // namespace supercalc
