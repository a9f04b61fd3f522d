#include "arggrad/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_map>

#include "arggrad/errors.hpp"
#include "arggrad/poly.hpp"

namespace arggrad {

namespace {

double canon_zero(double x) { return x == 0.0 ? 0.0 : x; }  // fold -0.0 into +0.0

Complex canon(Complex z) { return {canon_zero(z.real()), canon_zero(z.imag())}; }

// Hashable identity of a factor base, so construction can merge equal
// bases in linear time even for models with many thousands of factors.
struct BaseKey {
  std::size_t kind;
  std::uint64_t re_bits, im_bits;
  bool operator==(const BaseKey&) const = default;
};

struct BaseKeyHash {
  std::size_t operator()(const BaseKey& k) const {
    std::size_t h = k.kind;
    h = h * 0x100000001b3ULL ^ k.re_bits;
    h = h * 0x100000001b3ULL ^ k.im_bits;
    return h;
  }
};

BaseKey base_key(const FactorBase& b) {
  const Complex z = std::visit(
      [](const auto& x) -> Complex {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>)
          return x.rho;
        else if constexpr (std::is_same_v<T, ExponentialBase>)
          return x.c;
        else
          return x.a;
      },
      b);
  std::uint64_t re, im;
  const double zr = z.real(), zi = z.imag();
  std::memcpy(&re, &zr, sizeof re);
  std::memcpy(&im, &zi, sizeof im);
  return {b.index(), re, im};
}

void validate_factor(const Factor& f) {
  if (f.multiplicity == 0) throw InvalidModel("factor multiplicity must be nonzero");
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ScaledBase>) {
          if (b.rho == Complex{0.0, 0.0}) throw InvalidModel("scaled factor requires rho != 0");
          if (!is_finite(b.rho)) throw InvalidModel("factor parameter must be finite");
        } else if constexpr (std::is_same_v<T, ConstantBase>) {
          if (b.a == Complex{0.0, 0.0}) throw InvalidModel("constant factor requires a != 0");
          if (!is_finite(b.a)) throw InvalidModel("factor parameter must be finite");
        } else if constexpr (std::is_same_v<T, LinearBase>) {
          if (!is_finite(b.rho)) throw InvalidModel("factor parameter must be finite");
        } else {
          if (!is_finite(b.c)) throw InvalidModel("factor parameter must be finite");
        }
      },
      f.base);
}

}  // namespace

FactoredFunction::FactoredFunction(std::vector<Factor> factors) {
  std::unordered_map<BaseKey, std::size_t, BaseKeyHash> index;
  index.reserve(factors.size());
  for (Factor f : factors) {
    std::visit(
        [](auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>)
            b.rho = canon(b.rho);
          else if constexpr (std::is_same_v<T, ExponentialBase>)
            b.c = canon(b.c);
          else
            b.a = canon(b.a);
        },
        f.base);
    validate_factor(f);
    const auto [it, inserted] = index.try_emplace(base_key(f.base), factors_.size());
    if (inserted) {
      factors_.push_back(f);
    } else {
      factors_[it->second].multiplicity += f.multiplicity;
    }
  }
  std::erase_if(factors_, [](const Factor& f) { return f.multiplicity == 0; });
}

RationalFunction::RationalFunction(std::vector<Complex> numerator,
                                   std::vector<Complex> denominator, double dedup_radius)
    : num_(poly::trim_leading(std::move(numerator))),
      den_(poly::trim_leading(std::move(denominator))) {
  if (num_.empty() || den_.empty()) throw InvalidModel("rational function needs coefficients");
  if (std::abs(num_.back()) == 0.0 && num_.size() == 1)
    throw InvalidModel("numerator is identically zero");
  if (std::abs(den_.back()) == 0.0) throw InvalidModel("denominator is identically zero");
  if (poly::degree(num_) > 12 || poly::degree(den_) > 12)
    throw DegreeTooLarge("rational function degrees are capped at 12");
  if (poly::degree(num_) >= 1 && poly::degree(den_) >= 1) {
    const auto zn = poly::roots(num_);
    const auto zd = poly::roots(den_);
    for (const Complex& a : zn)
      for (const Complex& b : zd)
        if (std::abs(a - b) < dedup_radius)
          throw InvalidModel("numerator and denominator share a root; reduce the fraction");
  }
}

Complex evaluate(const FactoredFunction& f, ComplexPoint s) {
  const Complex z = s.value();
  Complex acc{1.0, 0.0};
  for (const Factor& fac : f.factors()) {
    const Complex base = std::visit(
        [&](const auto& b) -> Complex {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase>) return z - b.rho;
          if constexpr (std::is_same_v<T, ScaledBase>) return Complex{1.0, 0.0} - z / b.rho;
          if constexpr (std::is_same_v<T, ExponentialBase>) return std::exp(b.c * z);
          if constexpr (std::is_same_v<T, ConstantBase>) return b.a;
        },
        fac.base);
    if (fac.multiplicity < 0 && base == Complex{0.0, 0.0})
      throw PoleHit("evaluation at a pole of the model");
    acc *= ipow(base, fac.multiplicity);
  }
  if (!is_finite(acc)) throw PoleHit("factored product overflowed near a pole");
  return acc;
}

Complex evaluate(const RationalFunction& f, ComplexPoint s) {
  const Complex z = s.value();
  const Complex den = poly::eval(f.denominator(), z);
  if (den == Complex{0.0, 0.0}) throw PoleHit("evaluation at a pole of the model");
  const Complex out = poly::eval(f.numerator(), z) / den;
  if (!is_finite(out)) throw PoleHit("rational evaluation overflowed near a pole");
  return out;
}

Complex evaluate(const AnyModel& f, ComplexPoint s) {
  return std::visit([&](const auto& m) { return evaluate(m, s); }, f);
}

Complex log_derivative(const FactoredFunction& f, ComplexPoint s) {
  const Complex z = s.value();
  Complex acc{0.0, 0.0};
  for (const Factor& fac : f.factors()) {
    const double m = fac.multiplicity;
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>) {
            // d/ds log(1 - s/rho) = 1/(s - rho), same as the monic form.
            const Complex diff = z - b.rho;
            if (diff == Complex{0.0, 0.0})
              throw NearSingularity("log-derivative at a zero/pole of the model");
            acc += m / diff;
          } else if constexpr (std::is_same_v<T, ExponentialBase>) {
            acc += m * b.c;
          }
          // Constant contributes nothing.
        },
        fac.base);
  }
  return acc;
}

Complex log_derivative(const RationalFunction& f, ComplexPoint s) {
  const Complex z = s.value();
  const Complex n = poly::eval(f.numerator(), z);
  const Complex d = poly::eval(f.denominator(), z);
  if (n == Complex{0.0, 0.0} || d == Complex{0.0, 0.0})
    throw NearSingularity("log-derivative at a zero/pole of the model");
  const Complex np = poly::eval(poly::derivative(f.numerator()), z);
  const Complex dp = poly::eval(poly::derivative(f.denominator()), z);
  return np / n - dp / d;
}

Complex log_derivative(const AnyModel& f, ComplexPoint s) {
  return std::visit([&](const auto& m) { return log_derivative(m, s); }, f);
}

Complex log_derivative_prime(const FactoredFunction& f, ComplexPoint s) {
  const Complex z = s.value();
  Complex acc{0.0, 0.0};
  for (const Factor& fac : f.factors()) {
    const double m = fac.multiplicity;
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>) {
            const Complex diff = z - b.rho;
            if (diff == Complex{0.0, 0.0})
              throw NearSingularity("log-derivative at a zero/pole of the model");
            acc -= m / (diff * diff);
          }
        },
        fac.base);
  }
  return acc;
}

Complex log_derivative_prime(const RationalFunction& f, ComplexPoint s) {
  const Complex z = s.value();
  const auto& nc = f.numerator();
  const auto& dc = f.denominator();
  const Complex n = poly::eval(nc, z);
  const Complex d = poly::eval(dc, z);
  if (n == Complex{0.0, 0.0} || d == Complex{0.0, 0.0})
    throw NearSingularity("log-derivative at a zero/pole of the model");
  const auto ncd = poly::derivative(nc);
  const auto dcd = poly::derivative(dc);
  const Complex np = poly::eval(ncd, z);
  const Complex dp = poly::eval(dcd, z);
  const Complex npp = poly::eval(poly::derivative(ncd), z);
  const Complex dpp = poly::eval(poly::derivative(dcd), z);
  return (npp * n - np * np) / (n * n) - (dpp * d - dp * dp) / (d * d);
}

Complex log_derivative_prime(const AnyModel& f, ComplexPoint s) {
  return std::visit([&](const auto& m) { return log_derivative_prime(m, s); }, f);
}

std::vector<Complex> wprime_numerator_roots(const RationalFunction& f, double dedup_radius) {
  const auto& nc = f.numerator();
  const auto& dc = f.denominator();
  // Numerator of W': N'D - ND'.
  const auto p = poly::trim_leading(
      poly::subtract(poly::multiply(poly::derivative(nc), dc), poly::multiply(nc, poly::derivative(dc))));
  auto candidates = poly::roots(p);
  if (poly::degree(dc) >= 1) {
    const auto pole_pts = poly::roots(dc);
    std::erase_if(candidates, [&](Complex r) {
      for (const Complex& q : pole_pts)
        if (std::abs(r - q) < dedup_radius) return true;
      return false;
    });
  }
  return candidates;
}

std::pair<PointsWithMultiplicity, PointsWithMultiplicity> zeros_and_poles(
    const FactoredFunction& f) {
  PointsWithMultiplicity zeros, poles;
  for (const Factor& fac : f.factors()) {
    std::visit(
        [&](const auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>) {
            if (fac.multiplicity > 0)
              zeros.emplace_back(b.rho, fac.multiplicity);
            else
              poles.emplace_back(b.rho, -fac.multiplicity);
          }
        },
        fac.base);
  }
  return {zeros, poles};
}

std::pair<PointsWithMultiplicity, PointsWithMultiplicity> zeros_and_poles(
    const RationalFunction& f) {
  PointsWithMultiplicity zeros, poles;
  if (poly::degree(f.numerator()) >= 1)
    for (const Complex& r : poly::roots(f.numerator())) zeros.emplace_back(r, 1);
  if (poly::degree(f.denominator()) >= 1)
    for (const Complex& r : poly::roots(f.denominator())) poles.emplace_back(r, 1);
  return {zeros, poles};
}

std::pair<PointsWithMultiplicity, PointsWithMultiplicity> zeros_and_poles(const AnyModel& f) {
  return std::visit([](const auto& m) { return zeros_and_poles(m); }, f);
}

double distance_to_singularity(const PointsWithMultiplicity& zeros,
                               const PointsWithMultiplicity& poles, Complex s) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [p, m] : zeros) best = std::min(best, std::abs(s - p));
  for (const auto& [p, m] : poles) best = std::min(best, std::abs(s - p));
  return best;
}

}  // namespace arggrad
