#ifndef ARGGRAD_LOCATOR_HPP
#define ARGGRAD_LOCATOR_HPP

#include <vector>

#include "arggrad/arg_field.hpp"
#include "arggrad/complex_core.hpp"
#include "arggrad/function_model.hpp"

namespace arggrad {

enum class RootStatus { Confirmed, NearSingularity, Unconverged };

struct RootCandidate {
  ComplexPoint point;
  double grad_norm = 0.0;        // ||(Im L, Re L)|| at point
  double wprime_residual = 0.0;  // |W'| computed as |L * W|
  RootStatus status = RootStatus::Unconverged;
};

struct NewtonStats {
  std::vector<int> iterations_histogram;  // index = iteration count of converged seeds
  int seeds_total = 0;
  int seeds_skipped_near_singularity = 0;
  int seeds_unconverged = 0;
  int degenerate_jacobian_hits = 0;
};

struct LocateReport {
  Rectangle region;
  std::vector<RootCandidate> roots;  // sorted by (sigma, t)
  int grid_density = 0;
  NewtonStats newton_stats;
};

/// All zeros of W' inside the region found by solving
/// (d arg/d sigma, d arg/d t) = (0, 0): grid seeding + damped Newton on
/// g = (Im L, Re L), whose Jacobian [[Im L', Re L'], [Re L', -Im L']]
/// has det -|L'|^2 and reduces the step to -L/L' in complex form.
LocateReport locate(const AnyModel& f, const Rectangle& region, const NumericPolicy& policy,
                    int grid_density = 64);

struct ExclusionScan {
  bool excluded = false;  // true iff no Confirmed roots were found
  double witness = 0.0;   // min over the grid of max(|d_sigma|, |d_t|)
};

/// Contrapositive check: at non-roots at least one partial is nonzero.
ExclusionScan exclusion_scan(const AnyModel& f, const Rectangle& region,
                             const NumericPolicy& policy, int grid_density = 64);

}  // namespace arggrad

#endif
