#ifndef ARGGRAD_CERTIFIER_HPP
#define ARGGRAD_CERTIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "arggrad/complex_core.hpp"
#include "arggrad/function_model.hpp"

namespace arggrad {

enum class PartialAxis { Sigma, T };
enum class CertSign { Positive, Negative };
enum class CertMethod { TermwiseSign, IntervalBound };

/// Proof that one argument partial is sign-definite on a rectangle,
/// hence the rectangle contains no zeros of W' (the region is required
/// to avoid zeros and poles of W).
struct ExclusionCertificate {
  Rectangle region;
  PartialAxis partial;
  CertSign sign;
  CertMethod method;
  double margin = 0.0;  // proven lower bound on |partial| over the region
};

/// Failure-to-certify is a value, not an exception: callers probe many regions.
struct CertifyFailure {
  std::string reason;
  std::optional<std::size_t> offending_factor;  // index into factors() for termwise
  std::vector<Rectangle> undecided_cells;       // interval method diagnostics
};

struct CertifyOutcome {
  std::optional<ExclusionCertificate> certificate;
  CertifyFailure failure;

  bool ok() const { return certificate.has_value(); }
};

/// The per-term sign argument: every factor's contribution to the chosen
/// partial must keep one sign over the whole region. Margin is the sum of
/// per-term minimum magnitudes (closed-form corner/edge extremes).
CertifyOutcome certify_termwise(const FactoredFunction& f, const Rectangle& region,
                                PartialAxis partial);

/// Adaptive subdivision with interval bounds on each factor's contribution;
/// succeeds when the summed interval excludes zero on every leaf cell.
/// Never weaker than the termwise method on termwise-certifiable input.
CertifyOutcome certify_interval(const FactoredFunction& f, const Rectangle& region,
                                PartialAxis partial, int max_depth = 12);

/// Largest magnitude one factor can contribute to the chosen partial
/// anywhere in the region (exact corner/edge extremes, same bound the
/// certifiers use). The factor's zero/pole must lie outside the region.
double factor_contribution_bound(const Factor& f, const Rectangle& region, PartialAxis partial);

}  // namespace arggrad

#endif
