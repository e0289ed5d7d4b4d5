#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "graded/algebra.hpp"

namespace bfvlab::graded {

// Deterministic RNG wrapper. mt19937_64 output is fully specified, so
// fixed seeds reproduce across platforms; we avoid std distributions,
// whose mapping is not.
struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::mt19937_64 eng;

  std::uint64_t bits() { return eng(); }
  int below(int n) { return static_cast<int>(bits() % static_cast<std::uint64_t>(n)); }
  double unit() { return (bits() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

struct RandomPolyOptions {
  int max_terms = 3;
  int max_factors = 3;     // generator picks per monomial
  int coeff_range = 5;     // coefficients in [-range, range] \ {0}
  bool allow_constant = true;
  // When set, monomials draw only from these generators.
  std::vector<int> restrict_to;
};

Poly random_poly(const AlgebraPtr& alg, Rng& rng,
                 const RandomPolyOptions& opt = {});

// Random nonzero monomial as a polynomial with coefficient 1.
Poly random_monomial(const AlgebraPtr& alg, Rng& rng,
                     const RandomPolyOptions& opt = {});

}  // namespace bfvlab::graded
