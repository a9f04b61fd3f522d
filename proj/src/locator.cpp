#include "arggrad/locator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace arggrad {

namespace {

struct SeedOutcome {
  Complex point;
  double grad_norm = 0.0;
  bool degenerate = false;
  int iterations = 0;
};

// Damped Newton on g = (Im L, Re L); the complex form of the step is
// -L/L'. Returns the final iterate; callers classify it.
std::optional<SeedOutcome> newton_from_seed(const AnyModel& f, Complex seed,
                                            const Rectangle& region, const NumericPolicy& policy,
                                            NewtonStats& stats) {
  // Iterates may wander slightly outside before converging back in.
  const double pad_s = 0.5 * region.width();
  const double pad_t = 0.5 * region.height();
  const Rectangle roam(region.sigma_min - pad_s, region.sigma_max + pad_s, region.t_min - pad_t,
                       region.t_max + pad_t);

  Complex s = seed;
  double gnorm;
  try {
    gnorm = std::abs(log_derivative(f, ComplexPoint(s)));
  } catch (const NumericError&) {
    return std::nullopt;
  }

  const double stop = std::min(policy.grad_tol * 1e-2, 1e-12);
  SeedOutcome out;
  for (int iter = 0; iter < policy.newton_max_iter; ++iter) {
    if (gnorm <= stop) {
      out.point = s;
      out.grad_norm = gnorm;
      out.iterations = iter;
      return out;
    }
    Complex L, Lp;
    try {
      L = log_derivative(f, ComplexPoint(s));
      Lp = log_derivative_prime(f, ComplexPoint(s));
    } catch (const NumericError&) {
      return std::nullopt;
    }
    if (std::abs(Lp) < 1e-14) {
      // Degenerate Jacobian (det = -|L'|^2); report, do not guess.
      ++stats.degenerate_jacobian_hits;
      out.point = s;
      out.grad_norm = gnorm;
      out.degenerate = true;
      out.iterations = iter;
      return out;
    }
    const Complex full_step = -L / Lp;
    double lambda = 1.0;
    bool improved = false;
    for (int halving = 0; halving <= 6; ++halving) {
      const Complex trial = s + lambda * full_step;
      if (!roam.contains(trial)) {
        lambda *= 0.5;
        continue;
      }
      double trial_norm;
      try {
        trial_norm = std::abs(log_derivative(f, ComplexPoint(trial)));
      } catch (const NumericError&) {
        lambda *= 0.5;
        continue;
      }
      if (trial_norm < gnorm) {
        s = trial;
        gnorm = trial_norm;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      // Stalled at the rounding floor; usable if within tolerance.
      if (gnorm <= policy.grad_tol) {
        out.point = s;
        out.grad_norm = gnorm;
        out.iterations = iter;
        return out;
      }
      return std::nullopt;
    }
  }
  if (gnorm <= policy.grad_tol) {
    out.point = s;
    out.grad_norm = gnorm;
    out.iterations = policy.newton_max_iter;
    return out;
  }
  return std::nullopt;
}

RootStatus classify(const AnyModel& f, Complex p, double grad_norm, double dist_singular,
                    const NumericPolicy& policy, double& residual_out) {
  residual_out = std::numeric_limits<double>::infinity();
  try {
    const Complex w = evaluate(f, ComplexPoint(p));
    const Complex L = log_derivative(f, ComplexPoint(p));
    residual_out = std::abs(L * w);
  } catch (const NumericError&) {
    return RootStatus::NearSingularity;
  }
  if (dist_singular < policy.singular_radius) return RootStatus::NearSingularity;
  if (grad_norm <= policy.grad_tol && residual_out <= policy.residual_tol)
    return RootStatus::Confirmed;
  return RootStatus::Unconverged;
}

int status_rank(RootStatus s) {
  switch (s) {
    case RootStatus::Confirmed: return 0;
    case RootStatus::NearSingularity: return 1;
    case RootStatus::Unconverged: return 2;
  }
  return 3;
}

}  // namespace

LocateReport locate(const AnyModel& f, const Rectangle& region, const NumericPolicy& policy,
                    int grid_density) {
  policy.validate();
  if (grid_density < 1) throw InvalidModel("grid density must be at least 1");

  const auto [zeros, poles] = zeros_and_poles(f);

  LocateReport report{region, {}, grid_density, {}};
  report.newton_stats.iterations_histogram.assign(policy.newton_max_iter + 1, 0);

  std::vector<RootCandidate> candidates;
  const double dsig = region.width() / grid_density;
  const double dt = region.height() / grid_density;

  std::vector<Complex> seeds;
  seeds.reserve(static_cast<std::size_t>(grid_density) * grid_density);
  for (int i = 0; i < grid_density; ++i)
    for (int j = 0; j < grid_density; ++j)
      seeds.emplace_back(region.sigma_min + (i + 0.5) * dsig, region.t_min + (j + 0.5) * dt);

  // Ring seeds around every zero/pole: the equilibrium points of L like
  // to sit just outside the exclusion disks, where a rectangular grid of
  // ordinary density has no seed inside their small basins.
  for (const auto& list : {zeros, poles}) {
    for (const auto& [p, mult] : list) {
      for (double scale : {1.25, 2.5, 5.0}) {
        const double radius = scale * policy.singular_radius;
        for (int k = 0; k < 16; ++k) {
          const double theta = 2.0 * M_PI * k / 16 + 0.1;
          const Complex seed = p + radius * Complex{std::cos(theta), std::sin(theta)};
          if (region.contains(seed)) seeds.push_back(seed);
        }
      }
    }
  }

  for (const Complex& seed : seeds) {
    ++report.newton_stats.seeds_total;
      if (distance_to_singularity(zeros, poles, seed) < policy.singular_radius) {
        ++report.newton_stats.seeds_skipped_near_singularity;
        continue;
      }
      const auto outcome = newton_from_seed(f, seed, region, policy, report.newton_stats);
      if (!outcome) {
        ++report.newton_stats.seeds_unconverged;
        continue;
      }
      const Complex p = outcome->point;
      if (!region.contains(p)) continue;

      const double dist = distance_to_singularity(zeros, poles, p);
      if (outcome->degenerate && outcome->grad_norm > policy.grad_tol) {
        // Plausible multiple root of W'; surfaced as Unconverged diagnostics.
        if (outcome->grad_norm <= 1e-4) {
          candidates.push_back({ComplexPoint(p), outcome->grad_norm,
                                std::numeric_limits<double>::infinity(),
                                RootStatus::Unconverged});
        } else {
          ++report.newton_stats.seeds_unconverged;
        }
        continue;
      }
      report.newton_stats.iterations_histogram[std::min<std::size_t>(
          outcome->iterations, report.newton_stats.iterations_histogram.size() - 1)]++;

      double residual;
      const RootStatus status = classify(f, p, outcome->grad_norm, dist, policy, residual);
      candidates.push_back({ComplexPoint(p), outcome->grad_norm, residual, status});
    }
  }

  // Deterministic clustering: sort, then greedily merge within dedup_radius,
  // keeping the best representative (status rank, then residual, then norm).
  std::sort(candidates.begin(), candidates.end(), [](const RootCandidate& a, const RootCandidate& b) {
    if (a.point.sigma != b.point.sigma) return a.point.sigma < b.point.sigma;
    return a.point.t < b.point.t;
  });
  std::vector<RootCandidate> clustered;
  for (const RootCandidate& c : candidates) {
    bool merged = false;
    for (RootCandidate& rep : clustered) {
      if (std::abs(rep.point.value() - c.point.value()) < policy.dedup_radius) {
        const bool better = std::tuple(status_rank(c.status), c.wprime_residual, c.grad_norm) <
                            std::tuple(status_rank(rep.status), rep.wprime_residual, rep.grad_norm);
        if (better) rep = c;
        merged = true;
        break;
      }
    }
    if (!merged) clustered.push_back(c);
  }
  std::sort(clustered.begin(), clustered.end(), [](const RootCandidate& a, const RootCandidate& b) {
    if (a.point.sigma != b.point.sigma) return a.point.sigma < b.point.sigma;
    return a.point.t < b.point.t;
  });
  report.roots = std::move(clustered);
  return report;
}

ExclusionScan exclusion_scan(const AnyModel& f, const Rectangle& region,
                             const NumericPolicy& policy, int grid_density) {
  const LocateReport report = locate(f, region, policy, grid_density);
  ExclusionScan out;
  out.excluded = std::none_of(report.roots.begin(), report.roots.end(), [](const RootCandidate& r) {
    return r.status == RootStatus::Confirmed;
  });

  const auto [zeros, poles] = zeros_and_poles(f);
  double witness = std::numeric_limits<double>::infinity();
  const double dsig = region.width() / grid_density;
  const double dt = region.height() / grid_density;
  for (int i = 0; i < grid_density; ++i) {
    for (int j = 0; j < grid_density; ++j) {
      const ComplexPoint p(region.sigma_min + (i + 0.5) * dsig, region.t_min + (j + 0.5) * dt);
      if (distance_to_singularity(zeros, poles, p.value()) < policy.singular_radius) continue;
      witness = std::min(witness, grad_logd(f, p).max_abs());
    }
  }
  out.witness = std::isfinite(witness) ? witness : 0.0;
  return out;
}

}  // namespace arggrad
