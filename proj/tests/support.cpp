#include "support.hpp"

namespace testing_support {

using namespace supercalc;

namespace {
std::uint64_t g_seed = 20240601;
}

std::uint64_t seed() { return g_seed; }
void set_seed(std::uint64_t s) { g_seed = s; }

std::mt19937_64 engine(std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(g_seed), static_cast<std::uint32_t>(g_seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    long n = 0;
    while (n == 0) n = num(rng);
    return Rational(n, den(rng));
}

Generator random_field(std::mt19937_64& rng, const PolyShape& shape) {
    std::uniform_int_distribution<int> fam(0, shape.families - 1), ord(1, shape.max_order);
    return Generator::field(fam(rng), ord(rng));
}

SuperPolynomial random_polynomial(std::mt19937_64& rng, const PolyShape& shape, std::optional<int> parity) {
    std::uniform_int_distribution<int> terms(1, shape.max_terms), degree(1, shape.max_degree);
    SuperPolynomial out;
    const int want = terms(rng);
    for (int t = 0, tries = 0; t < want && tries < 200; ++tries) {
        std::vector<Generator> seq;
        const int deg = degree(rng);
        for (int k = 0; k < deg; ++k) seq.push_back(random_field(rng, shape));
        auto m = SuperPolynomial::product(seq, random_rational(rng));
        if (m.is_zero()) continue;
        if (parity && m.parity() != *parity) continue;
        out += m;
        ++t;
    }
    return out;
}

EvolutionaryField random_field_of_parity(std::mt19937_64& rng, const PolyShape& shape, int parity) {
    std::vector<SuperPolynomial> comps;
    for (int a = 0; a < shape.families; ++a) comps.push_back(random_polynomial(rng, shape, (parity + 1) % 2));
    return EvolutionaryField(std::move(comps), parity);
}

}  // namespace testing_support
