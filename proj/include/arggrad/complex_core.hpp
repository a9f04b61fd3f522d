#ifndef ARGGRAD_COMPLEX_CORE_HPP
#define ARGGRAD_COMPLEX_CORE_HPP

#include <cmath>
#include <complex>

#include "arggrad/errors.hpp"

namespace arggrad {

using Complex = std::complex<double>;

/// A point s = sigma + i*t. Construction rejects non-finite coordinates.
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double sigma_, double t_);
  explicit ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

  Complex value() const { return {sigma, t}; }

  friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) = default;
};

/// Axis-aligned closed rectangle [sigma_min, sigma_max] x [t_min, t_max].
struct Rectangle {
  double sigma_min, sigma_max, t_min, t_max;

  Rectangle(double smin, double smax, double tmin, double tmax);

  double width() const { return sigma_max - sigma_min; }
  double height() const { return t_max - t_min; }

  bool contains(const ComplexPoint& p) const {
    return p.sigma >= sigma_min && p.sigma <= sigma_max && p.t >= t_min && p.t <= t_max;
  }
  bool contains(Complex z) const { return contains(ComplexPoint(z)); }

  friend bool operator==(const Rectangle& a, const Rectangle& b) = default;
};

/// Tolerances and radii shared by the locator and certifier.
struct NumericPolicy {
  double grad_tol = 1e-9;          // gradient norm below which a point counts as a root
  double residual_tol = 1e-6;      // |W'| confirmation threshold
  double singular_radius = 0.05;   // exclusion disk around zeros/poles of W
  double fd_step_scale = 1.4901161193847656e-8;  // sqrt(machine epsilon)
  int newton_max_iter = 50;
  double dedup_radius = 1e-6;      // root clustering distance

  void validate() const;
};

// Checked complex arithmetic. Addition and multiplication cannot fail for
// finite inputs; division by exact zero is a domain error.
Complex complex_add(Complex a, Complex b);
Complex complex_mul(Complex a, Complex b);
Complex complex_div(Complex a, Complex b);
double complex_abs(Complex a);

/// z^n for signed integer n by squaring; n < 0 divides into 1.
Complex ipow(Complex z, int n);

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace arggrad

#endif
