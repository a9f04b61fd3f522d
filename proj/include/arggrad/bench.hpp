#ifndef ARGGRAD_BENCH_HPP
#define ARGGRAD_BENCH_HPP

#include <cstdint>
#include <vector>

#include "arggrad/complex_core.hpp"
#include "arggrad/function_model.hpp"
#include "arggrad/locator.hpp"

namespace arggrad {

// Equivalence harness: the locator's Confirmed set versus the polynomial-
// algebra oracle, over seeded random rational functions.

struct BenchInstanceResult {
  int oracle_roots = 0;
  int matched = 0;
  int missed = 0;
  int spurious = 0;
};

struct BenchSummary {
  std::uint64_t seed = 0;
  int instances = 0;
  double pairing_distance = 0.0;
  int total_matched = 0;
  int total_missed = 0;
  int total_spurious = 0;
  std::vector<BenchInstanceResult> per_instance;

  bool clean() const { return total_missed == 0 && total_spurious == 0; }
};

/// Deterministic generator: numerator degree 1..6, denominator degree 0..6,
/// roots uniform in [-5,5]^2, redrawn while numerator and denominator roots
/// collide. Draws depend only on the seed.
RationalFunction random_rational_instance(std::uint64_t& state);

/// Uniform double in [lo, hi) from a splitmix-style step of `state`.
double uniform_double(std::uint64_t& state, double lo, double hi);

BenchSummary run_bench(int instances, std::uint64_t seed, const Rectangle& region,
                       const NumericPolicy& policy, int grid_density = 64,
                       double pairing_distance = 1e-8);

}  // namespace arggrad

#endif
