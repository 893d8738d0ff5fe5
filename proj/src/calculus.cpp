#include "supercalc/calculus.hpp"

#include <stdexcept>

namespace supercalc {

namespace {

// Expands a monomial into a flat generator sequence.
std::vector<Generator> expand(const Monomial& m) {
    std::vector<Generator> seq;
    for (const auto& f : m.factors()) seq.insert(seq.end(), f.exponent, f.gen);
    return seq;
}

// Applies a left derivation of parity `parity` given per-generator images.
template <class ImageFn>
SuperPolynomial apply_derivation(const SuperPolynomial& u, int parity, ImageFn image) {
    SuperPolynomial out;
    for (const auto& [m, c] : u.terms()) {
        const auto& fs = m.factors();
        int before = 0;
        for (std::size_t idx = 0; idx < fs.size(); ++idx) {
            const Generator& g = fs[idx].gen;
            SuperPolynomial img = image(g);
            if (!img.is_zero()) {
                SuperPolynomial left, right;
                std::vector<Generator> lseq, rseq;
                for (std::size_t k = 0; k < idx; ++k) lseq.insert(lseq.end(), fs[k].exponent, fs[k].gen);
                rseq.insert(rseq.end(), fs[idx].exponent - 1, g);
                for (std::size_t k = idx + 1; k < fs.size(); ++k) rseq.insert(rseq.end(), fs[k].exponent, fs[k].gen);
                Rational coeff = c * Rational(static_cast<long>(fs[idx].exponent));
                if ((parity & before & 1) != 0) coeff = -coeff;
                out += SuperPolynomial::product(lseq, coeff) * img * SuperPolynomial::product(rseq);
            }
            before += g.parity() * static_cast<int>(fs[idx].exponent);
        }
    }
    return out;
}

}  // namespace

SuperPolynomial apply_D(const SuperPolynomial& u) {
    SuperPolynomial out;
    for (const auto& [m, c] : u.terms()) {
        auto seq = expand(m);
        int before = 0;
        for (std::size_t idx = 0; idx < seq.size(); ++idx) {
            // Even generators with exponent e contribute e equal terms; the
            // flat expansion handles that automatically.
            auto next = seq;
            next[idx] = seq[idx].derived();
            auto sm = normalize_monomial(next);
            if (sm.sign != 0) {
                int s = sm.sign * ((before & 1) ? -1 : 1);
                out.add_term(sm.monomial, s < 0 ? -c : c);
            }
            before += seq[idx].parity();
        }
    }
    return out;
}

SuperPolynomial apply_D(const SuperPolynomial& u, int times) {
    SuperPolynomial out = u;
    for (int k = 0; k < times && !out.is_zero(); ++k) out = apply_D(out);
    return out;
}

SuperPolynomial variational_derivative(const SuperPolynomial& u, const Generator& base) {
    const Generator b = base.base();
    const int max_m = u.max_derivatives(b);
    const int bp = b.parity();
    SuperPolynomial out;
    Generator g = b;
    for (int m = 0; m <= max_m; ++m, g = g.derived()) {
        SuperPolynomial p = partial_derive(u, g);
        if (p.is_zero()) continue;
        // (-1)^{m(m-1)/2} for odd bases, with an extra (-1)^m for even ones.
        int e = m * (m - 1) / 2 + m * (1 - bp);
        SuperPolynomial term = apply_D(p, m);
        out += (e & 1) ? -term : term;
    }
    return out;
}

SuperPolynomial variational_derivative(const SuperPolynomial& u, int family) {
    return variational_derivative(u, Generator::field(family, 1));
}

bool is_total_derivative(const SuperPolynomial& u) {
    if (!u.constant_term().is_zero()) {
        throw std::domain_error("total derivative test needs a zero constant term, got " + u.constant_term().str());
    }
    for (const auto& b : u.base_generators()) {
        if (!variational_derivative(u, b).is_zero()) return false;
    }
    return true;
}

EvolutionaryField::EvolutionaryField(std::vector<SuperPolynomial> components, int parity)
    : components_(std::move(components)), parity_(parity & 1) {
    for (std::size_t a = 0; a < components_.size(); ++a) {
        auto p = components_[a].parity();
        if (!p || (!components_[a].is_zero() && *p != (parity_ + 1) % 2)) {
            throw std::invalid_argument("component " + std::to_string(a) + " of an evolutionary field of parity " +
                                        std::to_string(parity_) + " must be homogeneous of parity " +
                                        std::to_string((parity_ + 1) % 2));
        }
    }
}

SuperPolynomial evolutionary_apply(const EvolutionaryField& f, const SuperPolynomial& u) {
    const int s = f.parity();
    const auto& comps = f.components();
    return apply_derivation(u, s, [&](const Generator& g) -> SuperPolynomial {
        if (!g.is_field() || g.family >= comps.size()) return {};
        int n = g.order - 1;
        SuperPolynomial img = apply_D(comps[g.family], n);
        return ((s * n) & 1) ? -img : img;
    });
}

SuperPolynomial Derivation::apply(const SuperPolynomial& u) const {
    return apply_derivation(u, parity, [&](const Generator& g) -> SuperPolynomial {
        auto it = images.find(g);
        return it == images.end() ? SuperPolynomial{} : it->second;
    });
}

Derivation to_derivation(const EvolutionaryField& f, int max_order) {
    Derivation x;
    x.parity = f.parity();
    for (std::size_t a = 0; a < f.dimension(); ++a) {
        SuperPolynomial img = f.components()[a];
        for (int order = 1; order <= max_order; ++order) {
            int n = order - 1;
            x.images[Generator::field(static_cast<int>(a), order)] = ((x.parity * n) & 1) ? -img : img;
            img = apply_D(img);
        }
    }
    return x;
}

namespace {

template <class Apply>
bool commutes(int parity, const std::vector<SuperPolynomial>& probes, Apply apply) {
    for (const auto& p : probes) {
        SuperPolynomial lhs = apply(apply_D(p));
        SuperPolynomial rhs = apply_D(apply(p));
        SuperPolynomial diff = (parity & 1) ? lhs + rhs : lhs - rhs;
        if (!diff.is_zero()) return false;
    }
    return true;
}

}  // namespace

bool check_commutes_with_D(const Derivation& x, const std::vector<SuperPolynomial>& probes) {
    return commutes(x.parity, probes, [&](const SuperPolynomial& u) { return x.apply(u); });
}

bool check_commutes_with_D(const EvolutionaryField& f, const std::vector<SuperPolynomial>& probes) {
    return commutes(f.parity(), probes, [&](const SuperPolynomial& u) { return evolutionary_apply(f, u); });
}

EvolutionaryField evolutionary_bracket(const EvolutionaryField& f, const EvolutionaryField& g) {
    const std::size_t d = std::max(f.dimension(), g.dimension());
    const bool sign_flip = (f.parity() & g.parity()) != 0;
    std::vector<SuperPolynomial> w(d);
    for (std::size_t q = 0; q < d; ++q) {
        SuperPolynomial vq = q < g.dimension() ? g.components()[q] : SuperPolynomial{};
        SuperPolynomial uq = q < f.dimension() ? f.components()[q] : SuperPolynomial{};
        SuperPolynomial a = evolutionary_apply(f, vq);
        SuperPolynomial b = evolutionary_apply(g, uq);
        w[q] = sign_flip ? a + b : a - b;
    }
    return EvolutionaryField(std::move(w), (f.parity() + g.parity()) % 2);
}

}  // namespace supercalc
