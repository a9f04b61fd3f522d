#include "arggrad/arg_field.hpp"

#include <algorithm>
#include <cmath>

namespace arggrad {

double ArgGradient::max_abs() const { return std::max(std::abs(d_sigma), std::abs(d_t)); }

double ArgGradient::norm() const { return std::hypot(d_sigma, d_t); }

double argument_value(Complex w) {
  const double u = w.real();
  const double v = w.imag();
  if (u == 0.0) throw UndefinedArgument("argument table is undefined when Re(w) = 0");
  if (u > 0.0 && v >= 0.0) return std::atan(v / u);            // case (1)
  if (u < 0.0 && v >= 0.0) return M_PI - std::atan(v / -u);    // case (2)
  if (u < 0.0 && v < 0.0) return M_PI + std::atan(v / u);      // case (3)
  return -std::atan(-v / u);                                   // case (4)
}

ArgGradient grad_fd(const AnyModel& f, ComplexPoint s, double fd_step_scale) {
  const double h = fd_step_scale * std::max(1.0, std::abs(s.value()));
  const Complex w = evaluate(f, s);
  const Complex w_sp = evaluate(f, ComplexPoint(s.sigma + h, s.t));
  const Complex w_sm = evaluate(f, ComplexPoint(s.sigma - h, s.t));
  const Complex w_tp = evaluate(f, ComplexPoint(s.sigma, s.t + h));
  const Complex w_tm = evaluate(f, ComplexPoint(s.sigma, s.t - h));

  const double u = w.real(), v = w.imag();
  const double us = (w_sp.real() - w_sm.real()) / (2.0 * h);
  const double vs = (w_sp.imag() - w_sm.imag()) / (2.0 * h);
  const double ut = (w_tp.real() - w_tm.real()) / (2.0 * h);
  const double vt = (w_tp.imag() - w_tm.imag()) / (2.0 * h);

  const double denom = u * u + v * v;
  if (denom == 0.0) throw NearSingularity("argument gradient at a zero of the model");
  return {(vs * u - us * v) / denom, (vt * u - ut * v) / denom};
}

ArgGradient grad_logd(const AnyModel& f, ComplexPoint s) {
  const Complex L = log_derivative(f, s);
  return {L.imag(), L.real()};
}

ArgGradient grad_factor_sum(const FactoredFunction& f, ComplexPoint s) {
  double dsig = 0.0, dt = 0.0;
  for (const Factor& fac : f.factors()) {
    const double m = fac.multiplicity;
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>) {
            const double x = s.sigma - b.rho.real();
            const double y = s.t - b.rho.imag();
            const double r2 = x * x + y * y;
            if (r2 == 0.0) throw NearSingularity("argument gradient at a zero/pole of the model");
            dsig += m * (-y) / r2;
            dt += m * x / r2;
          } else if constexpr (std::is_same_v<T, ExponentialBase>) {
            // arg e^{(a+ib)s} = a t + b sigma.
            dsig += m * b.c.imag();
            dt += m * b.c.real();
          }
        },
        fac.base);
  }
  return {dsig, dt};
}

RouteValues evaluate_routes(const AnyModel& f, ComplexPoint s, double fd_step_scale) {
  RouteValues out;
  out.fd = grad_fd(f, s, fd_step_scale);
  out.logd = grad_logd(f, s);
  double d = std::max(std::abs(out.fd.d_sigma - out.logd.d_sigma),
                      std::abs(out.fd.d_t - out.logd.d_t));
  if (const auto* fm = std::get_if<FactoredFunction>(&f)) {
    out.factor_sum = grad_factor_sum(*fm, s);
    out.has_factor_sum = true;
    d = std::max({d, std::abs(out.factor_sum.d_sigma - out.logd.d_sigma),
                  std::abs(out.factor_sum.d_t - out.logd.d_t),
                  std::abs(out.factor_sum.d_sigma - out.fd.d_sigma),
                  std::abs(out.factor_sum.d_t - out.fd.d_t)});
  }
  out.max_discrepancy = d;
  return out;
}

ArgGradient grad_checked(const AnyModel& f, ComplexPoint s, double tol) {
  const RouteValues v = evaluate_routes(f, s);
  if (v.max_discrepancy > tol) {
    throw RouteDisagreement("gradient routes disagree beyond tolerance", v);
  }
  return v.logd;
}

CauchyRiemannResidual cauchy_riemann_residual(const AnyModel& f, ComplexPoint s,
                                              double fd_step_scale) {
  const double h = fd_step_scale * std::max(1.0, std::abs(s.value()));
  const Complex w_sp = evaluate(f, ComplexPoint(s.sigma + h, s.t));
  const Complex w_sm = evaluate(f, ComplexPoint(s.sigma - h, s.t));
  const Complex w_tp = evaluate(f, ComplexPoint(s.sigma, s.t + h));
  const Complex w_tm = evaluate(f, ComplexPoint(s.sigma, s.t - h));

  const double us = (w_sp.real() - w_sm.real()) / (2.0 * h);
  const double vs = (w_sp.imag() - w_sm.imag()) / (2.0 * h);
  const double ut = (w_tp.real() - w_tm.real()) / (2.0 * h);
  const double vt = (w_tp.imag() - w_tm.imag()) / (2.0 * h);
  return {us - vt, ut + vs};
}

}  // namespace arggrad
