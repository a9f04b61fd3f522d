#include "arggrad/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace arggrad {

namespace {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Exact range of g(x, y) = x / (x^2 + y^2) over [x1,x2] x [|y| in [ya,yb]].
// g has no interior critical points away from the origin, is monotone in
// y^2 for fixed x, and for fixed y has edge extremes at x = +-|y|.
Interval ratio_range(double x1, double x2, double ya, double yb) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const double ys[2] = {ya, yb};
  for (double y : ys) {
    double xs[6];
    int nx = 0;
    xs[nx++] = x1;
    xs[nx++] = x2;
    for (double cand : {y, -y})
      if (cand > x1 && cand < x2) xs[nx++] = cand;
    for (int i = 0; i < nx; ++i) {
      const double x = xs[i];
      const double r2 = x * x + y * y;
      if (r2 == 0.0) continue;  // singular corner; caller excludes regions touching it
      const double g = x / r2;
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
  }
  return {lo, hi};
}

double interval_abs_lo(double v1, double v2) {
  if (v1 <= 0.0 && v2 >= 0.0) return 0.0;
  return std::min(std::abs(v1), std::abs(v2));
}

double interval_abs_hi(double v1, double v2) { return std::max(std::abs(v1), std::abs(v2)); }

// Range of one factor's contribution to the chosen partial over a cell.
Interval term_interval(const Factor& fac, const Rectangle& cell, PartialAxis partial) {
  const double m = fac.multiplicity;
  Interval base{0.0, 0.0};
  bool have = false;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>) {
          const double sr = b.rho.real(), si = b.rho.imag();
          if (partial == PartialAxis::T) {
            // (sigma - sr) / ((sigma - sr)^2 + (t - si)^2)
            base = ratio_range(cell.sigma_min - sr, cell.sigma_max - sr,
                               interval_abs_lo(cell.t_min - si, cell.t_max - si),
                               interval_abs_hi(cell.t_min - si, cell.t_max - si));
          } else {
            // -(t - si) / (...): same shape with u = si - t.
            base = ratio_range(si - cell.t_max, si - cell.t_min,
                               interval_abs_lo(cell.sigma_min - sr, cell.sigma_max - sr),
                               interval_abs_hi(cell.sigma_min - sr, cell.sigma_max - sr));
          }
          have = true;
        } else if constexpr (std::is_same_v<T, ExponentialBase>) {
          const double v = partial == PartialAxis::Sigma ? b.c.imag() : b.c.real();
          base = {v, v};
          have = true;
        }
        // Constant factors contribute nothing.
      },
      fac.base);
  if (!have) return {0.0, 0.0};
  Interval out{m * base.lo, m * base.hi};
  if (out.lo > out.hi) std::swap(out.lo, out.hi);
  return out;
}

void require_region_clear(const FactoredFunction& f, const Rectangle& region) {
  const auto [zeros, poles] = zeros_and_poles(f);
  for (const auto& list : {zeros, poles}) {
    for (const auto& [p, mult] : list) {
      if (region.contains(p))
        throw RegionTouchesSingularity("region contains a zero or pole of the model");
    }
  }
}

const char* partial_name(PartialAxis p) { return p == PartialAxis::Sigma ? "sigma" : "t"; }

}  // namespace

double factor_contribution_bound(const Factor& f, const Rectangle& region, PartialAxis partial) {
  const Interval iv = term_interval(f, region, partial);
  return std::max(std::abs(iv.lo), std::abs(iv.hi));
}

CertifyOutcome certify_termwise(const FactoredFunction& f, const Rectangle& region,
                                PartialAxis partial) {
  require_region_clear(f, region);

  CertifyOutcome out;
  double sum_lo = 0.0, sum_hi = 0.0;
  int sign = 0;  // +1 all terms >= 0, -1 all <= 0
  for (std::size_t i = 0; i < f.factors().size(); ++i) {
    const Interval iv = term_interval(f.factors()[i], region, partial);
    if (iv.lo == 0.0 && iv.hi == 0.0) continue;  // neutral
    int term_sign;
    if (iv.lo >= 0.0)
      term_sign = +1;
    else if (iv.hi <= 0.0)
      term_sign = -1;
    else {
      out.failure = {std::string("factor contribution to d_") + partial_name(partial) +
                         " changes sign over the region",
                     i,
                     {}};
      return out;
    }
    if (sign == 0) sign = term_sign;
    if (sign != term_sign) {
      out.failure = {std::string("factor contribution to d_") + partial_name(partial) +
                         " opposes the sign of earlier terms",
                     i,
                     {}};
      return out;
    }
    sum_lo += iv.lo;
    sum_hi += iv.hi;
  }
  const double margin = sign > 0 ? sum_lo : (sign < 0 ? -sum_hi : 0.0);
  if (sign == 0 || !(margin > 0.0)) {
    out.failure = {"no term is bounded away from zero on the region", std::nullopt, {}};
    return out;
  }
  out.certificate = ExclusionCertificate{region, partial,
                                         sign > 0 ? CertSign::Positive : CertSign::Negative,
                                         CertMethod::TermwiseSign,
                                         margin * (1.0 - 1e-12)};  // rounding slack
  return out;
}

CertifyOutcome certify_interval(const FactoredFunction& f, const Rectangle& region,
                                PartialAxis partial, int max_depth) {
  require_region_clear(f, region);

  struct Cell {
    Rectangle rect;
    int depth;
  };
  std::vector<Cell> stack{{region, 0}};
  std::vector<Rectangle> undecided;
  double min_margin = std::numeric_limits<double>::infinity();
  int sign = 0;
  bool sign_conflict = false;

  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();

    double lo = 0.0, hi = 0.0;
    for (const Factor& fac : f.factors()) {
      const Interval iv = term_interval(fac, cell.rect, partial);
      lo += iv.lo;
      hi += iv.hi;
    }
    if (lo > 0.0 || hi < 0.0) {
      const int cell_sign = lo > 0.0 ? +1 : -1;
      if (sign == 0) sign = cell_sign;
      if (sign != cell_sign) sign_conflict = true;
      min_margin = std::min(min_margin, cell_sign > 0 ? lo : -hi);
      continue;
    }
    if (cell.depth >= max_depth) {
      if (undecided.size() < 16) undecided.push_back(cell.rect);
      continue;
    }
    const Rectangle& r = cell.rect;
    if (r.width() >= r.height()) {
      const double mid = 0.5 * (r.sigma_min + r.sigma_max);
      stack.push_back({Rectangle(r.sigma_min, mid, r.t_min, r.t_max), cell.depth + 1});
      stack.push_back({Rectangle(mid, r.sigma_max, r.t_min, r.t_max), cell.depth + 1});
    } else {
      const double mid = 0.5 * (r.t_min + r.t_max);
      stack.push_back({Rectangle(r.sigma_min, r.sigma_max, r.t_min, mid), cell.depth + 1});
      stack.push_back({Rectangle(r.sigma_min, r.sigma_max, mid, r.t_max), cell.depth + 1});
    }
  }

  CertifyOutcome out;
  if (!undecided.empty()) {
    out.failure = {"subdivision depth exceeded with undecided cells", std::nullopt,
                   std::move(undecided)};
    return out;
  }
  if (sign_conflict || sign == 0) {
    out.failure = {"partial changes sign between certified cells", std::nullopt, {}};
    return out;
  }
  out.certificate = ExclusionCertificate{region, partial,
                                         sign > 0 ? CertSign::Positive : CertSign::Negative,
                                         CertMethod::IntervalBound,
                                         min_margin * (1.0 - 1e-12)};  // rounding slack
  return out;
}

}  // namespace arggrad
