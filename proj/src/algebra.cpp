#include "supercalc/algebra.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace supercalc {

std::vector<Rational> StructureTensor::operator()(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
    std::vector<Rational> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero()) continue;
            Rational xy = x[i] * y[j];
            for (std::size_t k = 0; k < dim_; ++k) {
                const Rational& t = at(i, j, k);
                if (!t.is_zero()) out[k] += xy * t;
            }
        }
    }
    return out;
}

std::optional<AlgebraClass> parse_algebra_class(const std::string& name) {
    static const std::pair<const char*, AlgebraClass> names[] = {
        {"novikov", AlgebraClass::novikov},
        {"novikov_super", AlgebraClass::novikov_super},
        {"nx_bialgebra", AlgebraClass::nx_bialgebra},
        {"novikov_poisson", AlgebraClass::novikov_poisson},
        {"fermionic_novikov", AlgebraClass::fermionic_novikov},
        {"form_compat", AlgebraClass::form_compat},
    };
    for (const auto& [n, c] : names) {
        if (name == n) return c;
    }
    return std::nullopt;
}

std::string to_string(AlgebraClass c) {
    switch (c) {
        case AlgebraClass::novikov: return "novikov";
        case AlgebraClass::novikov_super: return "novikov_super";
        case AlgebraClass::nx_bialgebra: return "nx_bialgebra";
        case AlgebraClass::novikov_poisson: return "novikov_poisson";
        case AlgebraClass::fermionic_novikov: return "fermionic_novikov";
        case AlgebraClass::form_compat: return "form_compat";
    }
    return "unknown";
}

namespace {

using Vec = std::vector<Rational>;

Vec basis(std::size_t d, std::size_t i) {
    Vec v(d);
    v[i] = Rational(1);
    return v;
}

Vec operator-(Vec a, const Vec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
    return a;
}

Vec operator+(Vec a, const Vec& b) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

Vec scaled(Vec a, const Rational& c) {
    for (auto& x : a) x *= c;
    return a;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

Rational form_value(const Form& f, const Vec& x, const Vec& y) {
    Rational out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (!y[j].is_zero() && !f[i][j].is_zero()) out += x[i] * y[j] * f[i][j];
        }
    }
    return out;
}

struct Identity {
    std::string label;
    std::function<Vec(const Vec&, const Vec&, const Vec&, std::size_t, std::size_t, std::size_t)> residual;
};

const StructureTensor& need(const std::optional<StructureTensor>& t, const char* name, std::size_t d) {
    if (!t) throw std::invalid_argument(std::string("algebra has no '") + name + "' product");
    if (t->dimension() != d) throw std::invalid_argument(std::string("'") + name + "' product has the wrong dimension");
    return *t;
}

std::vector<Identity> identities(const AlgebraSpec& s, AlgebraClass cls) {
    const std::size_t d = s.dimension;
    std::vector<Identity> out;
    auto add_novikov = [&](const StructureTensor& o, bool fermionic) {
        if (fermionic) {
            out.push_back({"right-anticommutative", [&o](const Vec& x, const Vec& y, const Vec& z, auto...) {
                               return o(o(x, y), z) + o(o(x, z), y);
                           }});
        } else {
            out.push_back({"right-commutative", [&o](const Vec& x, const Vec& y, const Vec& z, auto...) {
                               return o(o(x, y), z) - o(o(x, z), y);
                           }});
        }
        out.push_back({"left-symmetric", [&o](const Vec& x, const Vec& y, const Vec& z, auto...) {
                           return (o(o(x, y), z) - o(x, o(y, z))) - (o(o(y, x), z) - o(y, o(x, z)));
                       }});
    };
    switch (cls) {
        case AlgebraClass::novikov: {
            add_novikov(need(s.circ, "circ", d), false);
            break;
        }
        case AlgebraClass::fermionic_novikov: {
            add_novikov(need(s.circ, "circ", d), true);
            break;
        }
        case AlgebraClass::novikov_super: {
            const auto& o = need(s.circ, "circ", d);
            if (!s.grading) throw std::invalid_argument("algebra has no 'grading'");
            if (s.grading->size() != d) throw std::invalid_argument("'grading' has the wrong length");
            const auto& g = *s.grading;
            out.push_back({"graded right-commutative",
                           [&o, &g](const Vec& x, const Vec& y, const Vec& z, std::size_t, std::size_t j,
                                    std::size_t k) {
                               Vec r = o(o(x, z), y);
                               return o(o(x, y), z) - ((g[j] & g[k] & 1) ? scaled(r, Rational(-1)) : r);
                           }});
            out.push_back({"graded left-symmetric",
                           [&o, &g](const Vec& x, const Vec& y, const Vec& z, std::size_t i, std::size_t j,
                                    std::size_t) {
                               Vec r = o(o(y, x), z) - o(y, o(x, z));
                               return (o(o(x, y), z) - o(x, o(y, z))) -
                                      ((g[i] & g[j] & 1) ? scaled(r, Rational(-1)) : r);
                           }});
            break;
        }
        case AlgebraClass::nx_bialgebra: {
            const auto& o = need(s.circ, "circ", d);
            const auto& x_ = need(s.times, "times", d);
            out.push_back({"cross-commutative",
                           [&x_](const Vec& u, const Vec& v, const Vec&, auto...) { return x_(u, v) - x_(v, u); }});
            add_novikov(o, false);
            out.push_back({"cross-circ-compatibility", [&o, &x_](const Vec& u, const Vec& v, const Vec& w, auto...) {
                               return o(x_(u, v), w) - x_(u, o(v, w));
                           }});
            out.push_back({"cross-circ-sum", [&o, &x_](const Vec& u, const Vec& v, const Vec& w, auto...) {
                               Vec lhs = x_(x_(u, v), w) + x_(u, x_(v, w));
                               Vec rhs = x_(o(v, u), w) + x_(u, o(v, w)) - o(v, x_(u, w));
                               return lhs - rhs;
                           }});
            out.push_back({"cross-associator", [&o, &x_](const Vec& u, const Vec& v, const Vec& w, auto...) {
                               Vec lhs = x_(x_(u, v), w) - x_(u, x_(v, w));
                               Vec rhs = o(x_(u, v), w) + o(w, x_(u, v)) - o(u, x_(v, w)) - o(x_(v, w), u);
                               return lhs - rhs;
                           }});
            break;
        }
        case AlgebraClass::novikov_poisson: {
            const auto& o = need(s.circ, "circ", d);
            const auto& p = need(s.dot, "dot", d);
            out.push_back({"dot-commutative",
                           [&p](const Vec& x, const Vec& y, const Vec&, auto...) { return p(x, y) - p(y, x); }});
            out.push_back({"dot-associative", [&p](const Vec& x, const Vec& y, const Vec& z, auto...) {
                               return p(p(x, y), z) - p(x, p(y, z));
                           }});
            add_novikov(o, false);
            out.push_back({"dot-circ-compatibility", [&o, &p](const Vec& x, const Vec& y, const Vec& z, auto...) {
                               return o(p(x, y), z) - p(x, o(y, z));
                           }});
            out.push_back({"dot-circ-left-symmetric", [&o, &p](const Vec& x, const Vec& y, const Vec& z, auto...) {
                               return (p(o(x, y), z) - o(x, p(y, z))) - (p(o(y, x), z) - o(y, p(x, z)));
                           }});
            break;
        }
        case AlgebraClass::form_compat: {
            const auto& o = need(s.circ, "circ", d);
            const auto& x_ = need(s.times, "times", d);
            if (!s.form) throw std::invalid_argument("algebra has no 'form'");
            const Form& f = *s.form;
            if (f.size() != d || std::any_of(f.begin(), f.end(), [d](const auto& r) { return r.size() != d; })) {
                throw std::invalid_argument("'form' has the wrong shape");
            }
            out.push_back({"form-symmetric", [&f](const Vec& u, const Vec& v, const Vec&, auto...) {
                               return Vec{form_value(f, u, v) - form_value(f, v, u)};
                           }});
            out.push_back({"form-invariant", [&o, &f](const Vec& u, const Vec& v, const Vec& w, auto...) {
                               return Vec{form_value(f, o(u, v), w) - form_value(f, u, o(v, w))};
                           }});
            out.push_back({"form-cross", [&o, &x_, &f](const Vec& u, const Vec& v, const Vec& w, auto...) {
                               return Vec{form_value(f, o(u, v), w) - Rational(2) * form_value(f, x_(u, v), w)};
                           }});
            break;
        }
    }
    return out;
}

}  // namespace

AxiomResult check_axioms(const AlgebraSpec& spec, AlgebraClass cls) {
    const auto ids = identities(spec, cls);
    const std::size_t d = spec.dimension;
    for (std::size_t i = 0; i < d; ++i) {
        Vec x = basis(d, i);
        for (std::size_t j = 0; j < d; ++j) {
            Vec y = basis(d, j);
            for (std::size_t k = 0; k < d; ++k) {
                Vec z = basis(d, k);
                for (const auto& id : ids) {
                    Vec r = id.residual(x, y, z, i, j, k);
                    if (!is_zero(r)) return {false, AxiomWitness{i, j, k, id.label, r}};
                }
            }
        }
    }
    return {};
}

std::vector<AxiomWitness> failing_identities(const AlgebraSpec& spec, AlgebraClass cls) {
    const auto ids = identities(spec, cls);
    const std::size_t d = spec.dimension;
    std::vector<AxiomWitness> out;
    for (const auto& id : ids) {
        bool found = false;
        for (std::size_t i = 0; i < d && !found; ++i) {
            for (std::size_t j = 0; j < d && !found; ++j) {
                for (std::size_t k = 0; k < d && !found; ++k) {
                    Vec r = id.residual(basis(d, i), basis(d, j), basis(d, k), i, j, k);
                    if (!is_zero(r)) {
                        out.push_back(AxiomWitness{i, j, k, id.label, r});
                        found = true;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

SuperPolynomial field_combination(const StructureTensor& t, std::size_t a, std::size_t b, int order,
                                  const Rational& scale = Rational(1)) {
    SuperPolynomial out;
    for (std::size_t g = 0; g < t.dimension(); ++g) {
        const Rational& c = t.at(a, b, g);
        if (!c.is_zero()) out += SuperPolynomial::of(Generator::field(static_cast<int>(g), order)) * (c * scale);
    }
    return out;
}

}  // namespace

MatrixDiffOperator build_type1_operator(const AlgebraSpec& spec) {
    const std::size_t d = spec.dimension;
    const auto& circ = need(spec.circ, "circ", d);
    const auto& cross = need(spec.times, "times", d);
    if (!spec.form) throw std::invalid_argument("algebra has no 'form'");
    StructureTensor dot(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) dot.at(i, j, k) = circ.at(i, j, k) + circ.at(j, i, k) - cross.at(i, j, k);

    MatrixDiffOperator H(1, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            ScalarDiffOperator e;
            e.add_term(5, SuperPolynomial::constant((*spec.form).at(a).at(b)));
            e.add_term(2, field_combination(dot, a, b, 1));
            e.add_term(1, field_combination(cross, a, b, 2));
            e.add_term(0, field_combination(circ, a, b, 3));
            H.set_both(a, b, e);
        }
    }
    return H;
}

MatrixDiffOperator build_type0_operator(const AlgebraSpec& spec) {
    const std::size_t d = spec.dimension;
    const auto& circ = need(spec.circ, "circ", d);
    MatrixDiffOperator H(0, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            ScalarDiffOperator e;
            e.add_term(0, field_combination(circ, a, b, 2));
            // (e_a x e_b) = e_b o e_a - e_a o e_b
            e.add_term(1, field_combination(circ, b, a, 1) - field_combination(circ, a, b, 1));
            H.set_both(a, b, e, -1);
        }
    }
    return H;
}

AlgebraSpec np_to_nx(const AlgebraSpec& spec) {
    const std::size_t d = spec.dimension;
    if (!spec.identity) throw std::invalid_argument("no identity element declared for the dot product");
    const std::size_t e = *spec.identity;
    if (e >= d) throw std::invalid_argument("identity index out of range");
    const auto& dot = need(spec.dot, "dot", d);
    const auto& circ = need(spec.circ, "circ", d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            Rational want = (i == k) ? Rational(1) : Rational(0);
            if (dot.at(e, i, k) != want || dot.at(i, e, k) != want) {
                throw std::invalid_argument("declared identity is not a unit for the dot product");
            }
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        Rational want = (k == e) ? Rational(2) : Rational(0);
        if (circ.at(e, e, k) != want) throw std::invalid_argument("identity fails 1 o 1 = 2");
    }
    auto np = check_axioms(spec, AlgebraClass::novikov_poisson);
    if (!np.ok) throw std::invalid_argument("Novikov-Poisson axioms fail: " + np.witness->identity);
    AlgebraSpec out;
    out.dimension = d;
    out.circ = circ;
    out.times = dot;
    out.form = spec.form;
    out.identity = spec.identity;
    return out;
}

AlgebraSpec make_truncated_example(int n) {
    if (n < 1) throw std::invalid_argument("truncated example needs n >= 1");
    const auto d = static_cast<std::size_t>(n);
    AlgebraSpec s;
    s.dimension = d;
    s.dot = StructureTensor(d);
    s.circ = StructureTensor(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i + j < d) {
                s.dot->at(i, j, i + j) = Rational(1);
                s.circ->at(i, j, i + j) = Rational(static_cast<long>(j) + 2);
            }
        }
    }
    s.form = Form(d, std::vector<Rational>(d));
    (*s.form)[0][0] = Rational(1);
    s.identity = 0;
    return s;
}

namespace {

// Elements of the exterior algebra on e_1..e_4: bitmask of the wedge
// factors (bit b-1 for e_b) to coefficient.
using Ext = std::map<unsigned, Rational>;

Ext wedge(const Ext& a, const Ext& b) {
    Ext out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            if (ma & mb) continue;
            // Sign of merging: each factor of b passes the factors of a above it.
            int swaps = 0;
            for (unsigned bit = 0; bit < 4; ++bit) {
                if (mb & (1U << bit)) swaps += __builtin_popcount(ma >> (bit + 1));
            }
            Rational c = ca * cb;
            if (swaps & 1) c = -c;
            Rational& slot = out[ma | mb];
            slot += c;
            if (slot.is_zero()) out.erase(ma | mb);
        }
    }
    return out;
}

unsigned mask(std::initializer_list<int> idx) {
    unsigned m = 0;
    for (int i : idx) m |= 1U << (i - 1);
    return m;
}

}  // namespace

AlgebraSpec make_exterior_example(const std::map<std::pair<int, int>, Rational>& c) {
    std::vector<Ext> v(6);
    for (const auto& [ij, val] : c) {
        auto [i, j] = ij;
        if (i < 1 || j > 4 || i >= j) throw std::invalid_argument("exterior coefficients need 1 <= i < j <= 4");
        if (!val.is_zero()) v[0][mask({i, j})] = val;
    }
    v[1][mask({2, 3, 4})] = Rational(1);
    v[2][mask({1, 3, 4})] = Rational(1);
    v[3][mask({1, 2, 4})] = Rational(1);
    v[4][mask({1, 2, 3})] = Rational(1);
    v[5][mask({1, 2, 3, 4})] = Rational(1);

    // Coordinates in the v-basis; v_1..v_5 are single ordered wedge monomials.
    auto coords = [&](const Ext& w) {
        std::vector<Rational> out(6);
        for (const auto& [m, cv] : w) {
            bool placed = false;
            for (std::size_t a = 1; a < 6; ++a) {
                if (v[a].begin()->first == m) {
                    out[a] += cv;
                    placed = true;
                }
            }
            if (!placed) throw std::logic_error("wedge product left the span of v_1..v_5");
        }
        return out;
    };

    AlgebraSpec s;
    s.dimension = 6;
    s.circ = StructureTensor(6);
    for (std::size_t a = 0; a < 6; ++a) {
        for (int b = 1; b <= 4; ++b) {
            Ext eb;
            eb[mask({b})] = Rational(1);
            auto r = coords(wedge(v[a], eb));
            for (std::size_t k = 0; k < 6; ++k) s.circ->at(a, static_cast<std::size_t>(b), k) = r[k];
        }
    }
    return s;
}

}  // namespace supercalc
