#ifndef ARGGRAD_FUNCTION_MODEL_HPP
#define ARGGRAD_FUNCTION_MODEL_HPP

#include <utility>
#include <variant>
#include <vector>

#include "arggrad/complex_core.hpp"

namespace arggrad {

// Factor bases: (s - rho), (1 - s/rho), e^{c s}, and a nonzero constant.
struct LinearBase {
  Complex rho;
};
struct ScaledBase {
  Complex rho;  // != 0
};
struct ExponentialBase {
  Complex c;
};
struct ConstantBase {
  Complex a;  // != 0
};

using FactorBase = std::variant<LinearBase, ScaledBase, ExponentialBase, ConstantBase>;

struct Factor {
  FactorBase base;
  int multiplicity = 1;  // != 0; negative means a pole factor
};

/// Product of factors raised to signed integer multiplicities.
/// Construction merges factors with identical bases; a merge that
/// cancels a multiplicity to zero drops the factor, which enforces the
/// standing assumption that zeros and poles are distinct points.
class FactoredFunction {
 public:
  FactoredFunction() = default;
  explicit FactoredFunction(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }

 private:
  std::vector<Factor> factors_;
};

/// Quotient of dense polynomials, coefficients ascending.
class RationalFunction {
 public:
  RationalFunction(std::vector<Complex> numerator, std::vector<Complex> denominator,
                   double dedup_radius = 1e-6);

  const std::vector<Complex>& numerator() const { return num_; }
  const std::vector<Complex>& denominator() const { return den_; }

 private:
  std::vector<Complex> num_;
  std::vector<Complex> den_;
};

using AnyModel = std::variant<FactoredFunction, RationalFunction>;

Complex evaluate(const FactoredFunction& f, ComplexPoint s);
Complex evaluate(const RationalFunction& f, ComplexPoint s);
Complex evaluate(const AnyModel& f, ComplexPoint s);

// L = W'/W.
Complex log_derivative(const FactoredFunction& f, ComplexPoint s);
Complex log_derivative(const RationalFunction& f, ComplexPoint s);
Complex log_derivative(const AnyModel& f, ComplexPoint s);

// L' = d/ds (W'/W).
Complex log_derivative_prime(const FactoredFunction& f, ComplexPoint s);
Complex log_derivative_prime(const RationalFunction& f, ComplexPoint s);
Complex log_derivative_prime(const AnyModel& f, ComplexPoint s);

/// Brute-force oracle: the zero set of W' away from poles, as roots of
/// N'D - ND' with denominator roots removed. Degrees capped at 12.
std::vector<Complex> wprime_numerator_roots(const RationalFunction& f,
                                            double dedup_radius = 1e-6);

using PointsWithMultiplicity = std::vector<std::pair<Complex, int>>;

/// (zeros, poles) with multiplicities. Factored models are read off the
/// factor list; rational models are root-found (degrees capped at 12).
std::pair<PointsWithMultiplicity, PointsWithMultiplicity> zeros_and_poles(
    const FactoredFunction& f);
std::pair<PointsWithMultiplicity, PointsWithMultiplicity> zeros_and_poles(
    const RationalFunction& f);
std::pair<PointsWithMultiplicity, PointsWithMultiplicity> zeros_and_poles(const AnyModel& f);

/// Distance from s to the nearest zero or pole (infinity when there are none).
double distance_to_singularity(const PointsWithMultiplicity& zeros,
                               const PointsWithMultiplicity& poles, Complex s);

}  // namespace arggrad

#endif
