#ifndef ARGGRAD_ARG_FIELD_HPP
#define ARGGRAD_ARG_FIELD_HPP

#include <string>

#include "arggrad/complex_core.hpp"
#include "arggrad/function_model.hpp"

namespace arggrad {

/// The pair (d arg/d sigma, d arg/d t), radians per unit length.
struct ArgGradient {
  double d_sigma = 0.0;
  double d_t = 0.0;

  double max_abs() const;
  double norm() const;

  friend bool operator==(const ArgGradient& a, const ArgGradient& b) = default;
};

enum class GradientRoute { CaseTableFiniteDifference, LogDerivativeIdentity, FactorSum };

/// Argument of w by the four-case arctangent table, range (-pi/2, 3pi/2).
/// Re(w) = 0 lies outside the table's domain and raises UndefinedArgument.
double argument_value(Complex w);

/// Route 1: central finite differences of u, v fed through the
/// (v'u - u'v)/(u^2+v^2) quotients. Branch-free; works at u = 0.
ArgGradient grad_fd(const AnyModel& f, ComplexPoint s, double fd_step_scale = 1.4901161193847656e-8);

/// Route 2: grad = (Im L, Re L) with L = W'/W.
ArgGradient grad_logd(const AnyModel& f, ComplexPoint s);

/// Route 3: closed-form per-factor contributions summed with multiplicities.
ArgGradient grad_factor_sum(const FactoredFunction& f, ComplexPoint s);

struct RouteValues {
  ArgGradient fd;
  ArgGradient logd;
  ArgGradient factor_sum;   // meaningful only when has_factor_sum
  bool has_factor_sum = false;
  double max_discrepancy = 0.0;
};

/// Diagnostic error carrying all routes when they disagree.
struct RouteDisagreement : NumericError {
  RouteValues values;
  RouteDisagreement(const std::string& what, RouteValues v)
      : NumericError(what), values(v) {}
};

RouteValues evaluate_routes(const AnyModel& f, ComplexPoint s,
                            double fd_step_scale = 1.4901161193847656e-8);

/// All applicable routes, cross-checked; throws RouteDisagreement beyond tol.
ArgGradient grad_checked(const AnyModel& f, ComplexPoint s, double tol = 1e-6);

/// Finite-difference Cauchy-Riemann residuals (u'_s - v'_t, u'_t + v'_s).
struct CauchyRiemannResidual {
  double first = 0.0;
  double second = 0.0;
};
CauchyRiemannResidual cauchy_riemann_residual(const AnyModel& f, ComplexPoint s,
                                              double fd_step_scale = 1.4901161193847656e-8);

}  // namespace arggrad

#endif
