#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "supercalc/calculus.hpp"
#include "supercalc/polynomial.hpp"

namespace testing_support {

/// Seed given by --seed, or the fixed default.
std::uint64_t seed();
void set_seed(std::uint64_t s);

/// Engine seeded from seed() and a per-test salt.
std::mt19937_64 engine(std::uint64_t salt);

struct PolyShape {
    int families = 3;
    int max_order = 5;
    int max_degree = 4;
    int max_terms = 4;
};

supercalc::Rational random_rational(std::mt19937_64& rng);
supercalc::Generator random_field(std::mt19937_64& rng, const PolyShape& shape);
/// Random polynomial without constant term; `parity` forces homogeneity.
supercalc::SuperPolynomial random_polynomial(std::mt19937_64& rng, const PolyShape& shape,
                                             std::optional<int> parity = std::nullopt);
supercalc::EvolutionaryField random_field_of_parity(std::mt19937_64& rng, const PolyShape& shape, int parity);

}  // namespace testing_support
