#include "arggrad/special_fns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <sstream>

#include "arggrad/digest.hpp"

namespace arggrad {

namespace {

void kahan_add(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

// Distance to the nearest pole of the truncated Gamma model (0, -1, .., -n).
double gamma_pole_distance(Complex s, int n) {
  const double k0 = std::clamp(std::round(-s.real()), 0.0, static_cast<double>(n));
  double best = std::numeric_limits<double>::infinity();
  for (double dk : {-1.0, 0.0, 1.0}) {
    const double k = std::clamp(k0 + dk, 0.0, static_cast<double>(n));
    best = std::min(best, std::abs(s + Complex{k, 0.0}));
  }
  return best;
}

// Tail-corrected truncated digamma: the finite sum plus the midpoint
// integral of the omitted terms. Remainder is O(|s| / n^3); the bound
// below carries a factor-2 pad over the midpoint-rule estimate.
Complex psi_corrected(Complex s, int n) {
  Complex sum = -1.0 / s - kEulerGamma;
  for (int k = 1; k <= n; ++k) sum += 1.0 / static_cast<double>(k) - 1.0 / (s + static_cast<double>(k));
  return sum + std::log(1.0 + s / (n + 0.5));
}

Complex psi_prime_corrected(Complex s, int n) {
  Complex sum = 1.0 / (s * s);
  for (int k = 1; k <= n; ++k) {
    const Complex d = s + static_cast<double>(k);
    sum += 1.0 / (d * d);
  }
  return sum + 1.0 / (s + (n + 0.5));
}

double correction_remainder_bound(int n, double sigma_max) {
  return sigma_max / (6.0 * std::pow(n - 1.0, 3.0));
}

double psi_corrected_real(double x, int n) {
  double sum = -1.0 / x - kEulerGamma;
  double comp = 0.0;
  for (int k = 1; k <= n; ++k) kahan_add(sum, comp, 1.0 / k - 1.0 / (x + k));
  return sum + std::log1p(x / (n + 0.5));
}

double point_rectangle_distance(Complex p, const Rectangle& r) {
  const double dx = std::max({r.sigma_min - p.real(), 0.0, p.real() - r.sigma_max});
  const double dy = std::max({r.t_min - p.imag(), 0.0, p.imag() - r.t_max});
  return std::hypot(dx, dy);
}

}  // namespace

GammaModel build_gamma(int n) {
  if (n < 10) throw InvalidModel("gamma truncation must be at least 10");
  std::vector<Factor> factors;
  factors.reserve(2 * static_cast<std::size_t>(n) + 2);
  factors.push_back({LinearBase{Complex{0.0, 0.0}}, -1});
  factors.push_back({ExponentialBase{Complex{kEulerGamma, 0.0}}, -1});
  for (int k = 1; k <= n; ++k) {
    factors.push_back({ScaledBase{Complex{-static_cast<double>(k), 0.0}}, -1});
    factors.push_back({ExponentialBase{Complex{-1.0 / k, 0.0}}, -1});
  }
  return GammaModel{n, FactoredFunction(std::move(factors))};
}

TailInterval GammaModel::tail_interval(PartialAxis partial, double sigma, double t) const {
  const double n = truncation_n;
  const double sa = std::abs(sigma);
  if (partial == PartialAxis::Sigma) {
    if (!(n > sa)) throw TruncationTooSmall("tail bound needs truncation_n > |sigma|");
    // 0 < sum_{k>n} t/((sigma+k)^2+t^2) <= |t| * integral_{n-|sigma|}^inf dx/(x^2+t^2)
    const double bound = std::atan(std::abs(t) / (n - sa));
    return t >= 0.0 ? TailInterval{0.0, bound} : TailInterval{-bound, 0.0};
  }
  // Paired term -(sigma(k+sigma)+t^2) / (k((k+sigma)^2+t^2)); for k >= 2|sigma|
  // its magnitude is at most 6|sigma|/k^2 + 4t^2/k^3.
  if (!(n >= 2.0 * (sa + 1.0)))
    throw TruncationTooSmall("tail bound needs truncation_n >= 2(|sigma|+1)");
  const double bound = 6.0 * sa / n + 2.0 * t * t / (n * n);
  return {-bound, bound};
}

double GammaModel::tail_bound(PartialAxis partial, const Rectangle& region) const {
  const double sa = std::max(std::abs(region.sigma_min), std::abs(region.sigma_max));
  const double ta = std::max(std::abs(region.t_min), std::abs(region.t_max));
  const TailInterval iv = tail_interval(partial, sa, ta);
  return std::max(std::abs(iv.lo), std::abs(iv.hi));
}

GammaGradient gamma_grad(const GammaModel& model, ComplexPoint s, double singular_radius) {
  const int n = model.truncation_n;
  const double sigma = s.sigma, t = s.t;
  if (!(n > std::abs(sigma) + 10))
    throw TruncationTooSmall("gamma gradient needs truncation_n > |sigma| + 10");
  if (gamma_pole_distance(s.value(), n) < singular_radius)
    throw NearSingularity("gamma gradient too close to a pole");

  const double r2_0 = sigma * sigma + t * t;
  double ds = t / r2_0, ds_c = 0.0;
  double dt = -sigma / r2_0 - kEulerGamma, dt_c = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double a = sigma + k;
    const double r2 = a * a + t * t;
    kahan_add(ds, ds_c, t / r2);
    kahan_add(dt, dt_c, -(a / r2 - 1.0 / k));  // paired form; the pieces alone diverge
  }
  GammaGradient out;
  out.grad = {ds, dt};
  out.d_sigma_tail = model.tail_interval(PartialAxis::Sigma, sigma, t);
  out.d_t_tail = model.tail_interval(PartialAxis::T, sigma, t);
  return out;
}

std::vector<double> digamma_real_zeros(int count, int n) {
  if (count < 1 || count > 20) throw InvalidModel("digamma zero count must be in [1, 20]");
  if (n < 10) throw InvalidModel("digamma truncation must be at least 10");

  const double bisect_tol = 1e-8;
  const double sigma_max = std::max(2.5, static_cast<double>(count));
  if (correction_remainder_bound(n, sigma_max) > 0.25 * bisect_tol)
    throw TruncationTooSmall("tail correction remainder exceeds the bisection tolerance");

  std::vector<double> zeros;
  zeros.reserve(count);
  const double delta = 1e-4;
  for (int idx = 0; idx < count; ++idx) {
    double lo, hi;
    if (idx == 0) {
      lo = 0.5;
      hi = 2.5;
    } else {
      lo = -idx + delta;
      hi = -idx + 1.0 - delta;
    }
    double flo = psi_corrected_real(lo, n);
    double fhi = psi_corrected_real(hi, n);
    if (!(flo < 0.0 && fhi > 0.0))
      throw NumericError("digamma bisection bracket lost its sign change");
    while (hi - lo > 0.1 * bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = psi_corrected_real(mid, n);
      if (fmid < 0.0) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
        fhi = fmid;
      }
    }
    zeros.push_back(0.5 * (lo + hi));
  }
  return zeros;
}

LocateReport gamma_derivative_zeros(const Rectangle& region, const NumericPolicy& policy,
                                    int coarse_n, int refine_n, int grid_density) {
  policy.validate();
  if (refine_n < coarse_n) throw InvalidModel("refinement truncation must be >= coarse");
  const GammaModel coarse = build_gamma(coarse_n);
  const AnyModel coarse_any{coarse.model};
  LocateReport report = locate(coarse_any, region, policy, grid_density);

  std::vector<RootCandidate> refined;
  for (const RootCandidate& cand : report.roots) {
    if (cand.status != RootStatus::Confirmed) {
      refined.push_back(cand);
      continue;
    }
    Complex z = cand.point.value();
    for (int iter = 0; iter < 30; ++iter) {
      const Complex L = psi_corrected(z, refine_n);
      if (std::abs(L) <= 1e-13) break;
      const Complex Lp = psi_prime_corrected(z, refine_n);
      if (std::abs(Lp) < 1e-14) break;
      const Complex step = -L / Lp;
      z += step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    RootCandidate r = cand;
    if (region.contains(z)) r.point = ComplexPoint(z);
    r.grad_norm = std::abs(psi_corrected(r.point.value(), refine_n));
    double wmag = 0.0;
    try {
      wmag = std::abs(evaluate(coarse.model, r.point));
    } catch (const NumericError&) {
      wmag = std::numeric_limits<double>::infinity();
    }
    r.wprime_residual = r.grad_norm * wmag;
    const double dist = gamma_pole_distance(r.point.value(), coarse_n);
    if (dist < policy.singular_radius)
      r.status = RootStatus::NearSingularity;
    else if (r.grad_norm <= policy.grad_tol && r.wprime_residual <= policy.residual_tol)
      r.status = RootStatus::Confirmed;
    else
      r.status = RootStatus::Unconverged;
    refined.push_back(r);
  }
  std::sort(refined.begin(), refined.end(), [](const RootCandidate& a, const RootCandidate& b) {
    if (a.point.sigma != b.point.sigma) return a.point.sigma < b.point.sigma;
    return a.point.t < b.point.t;
  });
  report.roots = std::move(refined);
  return report;
}

ZetaZeroTable ingest_zeta_zeros(std::istream& in) {
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ZetaZeroTable table;
  table.source_digest = fnv1a64_hex(content);

  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  double prev = 0.0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    const char* begin = line.c_str() + first;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) throw ParseError(line_no, "expected a decimal ordinate");
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (*end != '\0') throw ParseError(line_no, "trailing characters after ordinate");
    if (!std::isfinite(value) || value <= 0.0)
      throw ParseError(line_no, "ordinate must be positive and finite");
    if (!table.ordinates.empty() && value <= prev)
      throw NonMonotone(line_no, "ordinates must be strictly increasing");
    table.ordinates.push_back(value);
    prev = value;
  }
  return table;
}

XiModel build_xi(const ZetaZeroTable& table, int n, double assumed_sigma) {
  if (n < 1) throw InvalidModel("xi truncation must be at least 1");
  if (static_cast<std::size_t>(n) > table.ordinates.size())
    throw InvalidModel("xi truncation exceeds the ingested table size");
  if (!(assumed_sigma > 0.0 && assumed_sigma < 1.0))
    throw InvalidModel("assumed_sigma must lie strictly inside (0, 1)");
  if (table.ordinates.front() <= 14.0)
    throw InvalidModel("first ordinate must exceed 14");

  std::vector<Factor> factors;
  factors.push_back({ConstantBase{Complex{0.5, 0.0}}, 1});
  const bool reflected = assumed_sigma != 0.5;
  for (int k = 0; k < n; ++k) {
    const double tau = table.ordinates[static_cast<std::size_t>(k)];
    factors.push_back({ScaledBase{Complex{assumed_sigma, tau}}, 1});
    factors.push_back({ScaledBase{Complex{assumed_sigma, -tau}}, 1});
    if (reflected) {
      factors.push_back({ScaledBase{Complex{1.0 - assumed_sigma, tau}}, 1});
      factors.push_back({ScaledBase{Complex{1.0 - assumed_sigma, -tau}}, 1});
    }
  }
  XiModel model;
  model.zero_ordinates.assign(table.ordinates.begin(), table.ordinates.begin() + n);
  model.assumed_sigma = assumed_sigma;
  model.truncation_n = n;
  model.model = FactoredFunction(std::move(factors));
  return model;
}

double xi_tail_margin(const XiModel& model, const ZetaZeroTable& table, const Rectangle& region,
                      PartialAxis partial) {
  double sum = 0.0;
  const bool reflected = model.assumed_sigma != 0.5;
  for (std::size_t k = model.truncation_n; k < table.ordinates.size(); ++k) {
    const double tau = table.ordinates[k];
    for (double sign : {1.0, -1.0}) {
      std::vector<Complex> placed{{model.assumed_sigma, sign * tau}};
      if (reflected) placed.push_back({1.0 - model.assumed_sigma, sign * tau});
      for (const Complex& rho : placed) {
        if (point_rectangle_distance(rho, region) == 0.0)
          return std::numeric_limits<double>::infinity();
        sum += factor_contribution_bound({ScaledBase{rho}, 1}, region, partial);
      }
    }
  }
  return sum;
}

XiLineScan xi_critical_line_derivative_zeros(const XiModel& model, double t_lo, double t_hi,
                                             const NumericPolicy& policy) {
  policy.validate();
  if (model.assumed_sigma != 0.5)
    throw InvalidModel("critical-line scan requires assumed_sigma = 1/2");
  const auto& ords = model.zero_ordinates;
  if (ords.size() < 2) throw InvalidModel("need at least two ordinates to scan between");
  if (t_lo < ords.front() - 1e-9 || t_hi > ords.back() + 1e-9)
    throw InvalidModel("scan range must lie within the ingested ordinate span");

  XiLineScan scan;
  const AnyModel any{model.model};
  const double pad = policy.singular_radius * 1.2;
  for (std::size_t j = 0; j + 1 < ords.size(); ++j) {
    const double a = ords[j], b = ords[j + 1];
    if (a < t_lo - 1e-9 || b > t_hi + 1e-9) continue;
    if (b - a <= 3.0 * pad) continue;  // gap too narrow to carve a seed box
    const Rectangle rect(0.3, 0.7, a + pad, b - pad);
    const LocateReport report = locate(any, rect, policy, 16);
    int found = 0;
    for (const RootCandidate& r : report.roots) {
      if (r.status != RootStatus::Confirmed) continue;
      if (std::abs(r.point.sigma - 0.5) > 1e-8) continue;
      scan.root_ts.push_back(r.point.t);
      ++found;
    }
    scan.roots_per_interval.push_back(found);
    scan.interval_lo.push_back(a);
    scan.interval_hi.push_back(b);
  }
  std::sort(scan.root_ts.begin(), scan.root_ts.end());

  if (!scan.interval_lo.empty()) {
    const double band_lo = scan.interval_lo.front();
    const double band_hi = scan.interval_hi.back();
    // All model zeros sit on sigma = 1/2, so d_t keeps one sign on each
    // off-line band; roots with |sigma - 1/2| < 0.02 are ruled out by the
    // model's conjugate-pair symmetry (its zeros span only the line, and
    // the derivative zeros of a polynomial stay in the zeros' convex hull).
    scan.right_band = certify_termwise(model.model, Rectangle(0.52, 0.7, band_lo, band_hi),
                                       PartialAxis::T);
    scan.left_band = certify_termwise(model.model, Rectangle(0.3, 0.48, band_lo, band_hi),
                                      PartialAxis::T);
  } else {
    scan.right_band.failure.reason = "no ordinate pairs inside the scan range";
    scan.left_band.failure.reason = scan.right_band.failure.reason;
  }
  return scan;
}

}  // namespace arggrad
