#include "arggrad/bench.hpp"

#include <algorithm>
#include <cmath>

#include "arggrad/poly.hpp"

namespace arggrad {

namespace {

// splitmix64: tiny, seedable, and stable across platforms.
std::uint64_t next_u64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{Complex{1.0, 0.0}};
  for (const Complex& r : roots) c = poly::multiply(c, {-r, Complex{1.0, 0.0}});
  return c;
}

}  // namespace

double uniform_double(std::uint64_t& state, double lo, double hi) {
  const double u = static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

RationalFunction random_rational_instance(std::uint64_t& state) {
  for (;;) {
    const int deg_n = 1 + static_cast<int>(next_u64(state) % 6);
    const int deg_d = static_cast<int>(next_u64(state) % 7);
    std::vector<Complex> zn(deg_n), zd(deg_d);
    for (auto& z : zn) z = {uniform_double(state, -5.0, 5.0), uniform_double(state, -5.0, 5.0)};
    for (auto& z : zd) z = {uniform_double(state, -5.0, 5.0), uniform_double(state, -5.0, 5.0)};
    try {
      return RationalFunction(poly_from_roots(zn), poly_from_roots(zd));
    } catch (const InvalidModel&) {
      // numerator/denominator roots collided; redraw
    }
  }
}

BenchSummary run_bench(int instances, std::uint64_t seed, const Rectangle& region,
                       const NumericPolicy& policy, int grid_density, double pairing_distance) {
  policy.validate();
  BenchSummary summary;
  summary.seed = seed;
  summary.instances = instances;
  summary.pairing_distance = pairing_distance;

  std::uint64_t state = seed;
  for (int i = 0; i < instances; ++i) {
    const RationalFunction f = random_rational_instance(state);
    const auto [zeros, poles] = zeros_and_poles(f);

    std::vector<Complex> expected;
    for (const Complex& r : wprime_numerator_roots(f, policy.dedup_radius)) {
      if (!region.contains(r)) continue;
      if (distance_to_singularity(zeros, poles, r) < policy.singular_radius) continue;
      expected.push_back(r);
    }

    const LocateReport report = locate(AnyModel{f}, region, policy, grid_density);
    std::vector<Complex> found;
    for (const RootCandidate& c : report.roots)
      if (c.status == RootStatus::Confirmed) found.push_back(c.point.value());

    BenchInstanceResult res;
    res.oracle_roots = static_cast<int>(expected.size());
    std::vector<bool> used(found.size(), false);
    for (const Complex& e : expected) {
      int best = -1;
      double best_dist = pairing_distance;
      for (std::size_t k = 0; k < found.size(); ++k) {
        if (used[k]) continue;
        const double d = std::abs(found[k] - e);
        if (d <= best_dist) {
          best_dist = d;
          best = static_cast<int>(k);
        }
      }
      if (best >= 0) {
        used[static_cast<std::size_t>(best)] = true;
        ++res.matched;
      } else {
        ++res.missed;
      }
    }
    res.spurious = static_cast<int>(found.size()) - res.matched;

    summary.total_matched += res.matched;
    summary.total_missed += res.missed;
    summary.total_spurious += res.spurious;
    summary.per_instance.push_back(res);
  }
  return summary;
}

}  // namespace arggrad
