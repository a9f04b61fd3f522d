#ifndef ARGGRAD_SPECIAL_FNS_HPP
#define ARGGRAD_SPECIAL_FNS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "arggrad/arg_field.hpp"
#include "arggrad/certifier.hpp"
#include "arggrad/complex_core.hpp"
#include "arggrad/function_model.hpp"
#include "arggrad/locator.hpp"

namespace arggrad {

inline constexpr double kEulerGamma = 0.5772156649015329;

struct TailInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Truncated Weierstrass-product model of Gamma: the inverse of
/// s e^{g s} prod_{k<=n} (1 + s/k) e^{-s/k}. Poles at 0, -1, ..., -n.
struct GammaModel {
  int truncation_n = 0;
  FactoredFunction model;

  /// Bound on the omitted-term sum for one partial at a point.
  TailInterval tail_interval(PartialAxis partial, double sigma, double t) const;
  /// Worst case of tail_interval over a rectangle.
  double tail_bound(PartialAxis partial, const Rectangle& region) const;
};

GammaModel build_gamma(int n);

struct GammaGradient {
  ArgGradient grad;
  TailInterval d_sigma_tail;
  TailInterval d_t_tail;
};

/// Truncated partial-derivative sums of arg Gamma, evaluated directly in
/// the paired convergent form with compensated summation, plus the
/// closed-form tail intervals.
GammaGradient gamma_grad(const GammaModel& model, ComplexPoint s, double singular_radius = 0.05);

/// The positive digamma zero followed by the zero in (-m, -m+1) for
/// m = 1..count-1, each refined by bisection to 1e-8. The bisected
/// function is the real-axis d_t sum with its integral tail correction;
/// the op refuses (TruncationTooSmall) when the correction remainder
/// bound exceeds the bisection tolerance.
std::vector<double> digamma_real_zeros(int count, int n);

/// Zeros of the derivative of the truncated Gamma model inside a region:
/// a full locate pass on a coarse model followed by Newton refinement
/// against a tail-corrected log-derivative, so reported roots agree with
/// the untruncated digamma zeros to ~1e-9 at desk-scale cost.
LocateReport gamma_derivative_zeros(const Rectangle& region, const NumericPolicy& policy,
                                    int coarse_n = 1000, int refine_n = 20000,
                                    int grid_density = 48);

struct ZetaZeroTable {
  std::vector<double> ordinates;  // ascending, positive
  std::string source_digest;      // FNV-1a hash of the ingested bytes
};

/// One ordinate per line, '#' comments and blank lines allowed.
ZetaZeroTable ingest_zeta_zeros(std::istream& in);

/// Truncated Hadamard-product model of xi over ingested zero ordinates.
/// Zeros at assumed_sigma +- i t_k (plus the reflected pair when
/// assumed_sigma != 1/2) so the factor set is closed under conjugation.
struct XiModel {
  std::vector<double> zero_ordinates;  // the n ingested ordinates in use
  double assumed_sigma = 0.5;
  int truncation_n = 0;
  FactoredFunction model;
};

XiModel build_xi(const ZetaZeroTable& table, int n, double assumed_sigma = 0.5);

/// Bound on what the table's unused ordinates could add to the chosen
/// partial over the region (exact per-factor extremes). Covers only the
/// ingested table; the infinite remainder of the true product is out of
/// scope and reported nowhere as certified.
double xi_tail_margin(const XiModel& model, const ZetaZeroTable& table, const Rectangle& region,
                      PartialAxis partial);

struct XiLineScan {
  std::vector<double> root_ts;          // Confirmed roots' t values, ascending
  std::vector<int> roots_per_interval;  // aligned with consecutive ordinate pairs scanned
  std::vector<double> interval_lo, interval_hi;
  CertifyOutcome right_band;  // off-line exclusion, sigma > 1/2 side
  CertifyOutcome left_band;   // off-line exclusion, sigma < 1/2 side
};

/// Locate derivative zeros of the critical-line model between consecutive
/// ordinates within [t_lo, t_hi], and certify the off-line bands.
XiLineScan xi_critical_line_derivative_zeros(const XiModel& model, double t_lo, double t_hi,
                                             const NumericPolicy& policy);

}  // namespace arggrad

#endif
