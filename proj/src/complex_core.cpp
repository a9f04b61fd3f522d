#include "arggrad/complex_core.hpp"

namespace arggrad {

ComplexPoint::ComplexPoint(double sigma_, double t_) : sigma(sigma_), t(t_) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) {
    throw InvalidModel("ComplexPoint coordinates must be finite");
  }
}

Rectangle::Rectangle(double smin, double smax, double tmin, double tmax)
    : sigma_min(smin), sigma_max(smax), t_min(tmin), t_max(tmax) {
  if (!(std::isfinite(smin) && std::isfinite(smax) && std::isfinite(tmin) && std::isfinite(tmax))) {
    throw InvalidModel("Rectangle bounds must be finite");
  }
  if (!(sigma_min < sigma_max && t_min < t_max)) {
    throw InvalidModel("Rectangle requires sigma_min < sigma_max and t_min < t_max");
  }
}

void NumericPolicy::validate() const {
  if (!(grad_tol > 0 && residual_tol > 0 && singular_radius > 0 && fd_step_scale > 0 &&
        newton_max_iter > 0 && dedup_radius > 0)) {
    throw InvalidModel("NumericPolicy fields must all be positive");
  }
  if (!(singular_radius > dedup_radius)) {
    throw InvalidModel("NumericPolicy requires singular_radius > dedup_radius");
  }
}

Complex complex_add(Complex a, Complex b) { return a + b; }

Complex complex_mul(Complex a, Complex b) { return a * b; }

Complex complex_div(Complex a, Complex b) {
  if (b == Complex(0.0, 0.0)) {
    throw DivisionByZero("complex division by exact zero");
  }
  return a / b;
}

double complex_abs(Complex a) { return std::abs(a); }

Complex ipow(Complex z, int n) {
  if (n == 0) return {1.0, 0.0};
  bool invert = n < 0;
  unsigned long long e = invert ? -static_cast<long long>(n) : n;
  Complex acc{1.0, 0.0};
  Complex base = z;
  while (e > 0) {
    if (e & 1ULL) acc *= base;
    base *= base;
    e >>= 1ULL;
  }
  return invert ? complex_div(Complex{1.0, 0.0}, acc) : acc;
}

}  // namespace arggrad
