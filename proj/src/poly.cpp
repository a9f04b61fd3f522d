#include "arggrad/poly.hpp"

#include <algorithm>
#include <cmath>

namespace arggrad::poly {

Complex eval(const std::vector<Complex>& c, Complex s) {
  Complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  if (c.size() <= 1) return {Complex{0.0, 0.0}};
  std::vector<Complex> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Complex> subtract(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(std::max(a.size(), b.size()), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

std::vector<Complex> trim_leading(const std::vector<Complex>& c, double rel_tol) {
  double scale = 0.0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  std::vector<Complex> out = c;
  while (out.size() > 1 && std::abs(out.back()) <= rel_tol * scale) out.pop_back();
  return out;
}

int degree(const std::vector<Complex>& c) {
  return static_cast<int>(trim_leading(c).size()) - 1;
}

std::vector<Complex> roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = trim_leading(coeffs);
  // Factor out roots at the origin so the iteration never stalls on them.
  std::vector<Complex> out;
  std::size_t low = 0;
  while (low + 1 < c.size() && std::abs(c[low]) == 0.0) ++low;
  for (std::size_t k = 0; k < low; ++k) out.emplace_back(0.0, 0.0);
  c.erase(c.begin(), c.begin() + static_cast<long>(low));

  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return out;

  // Monic normalization.
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  std::vector<Complex> d = derivative(c);

  // Cauchy bound: all roots within 1 + max|c_i|.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
  const double radius = 0.5 + 0.5 * (1.0 + bound);

  std::vector<Complex> z(n);
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * M_PI * j / n + 0.376;  // fixed offbeat phase, avoids symmetry locks
    z[j] = radius * Complex{std::cos(theta), std::sin(theta)};
  }

  const int max_iter = 200;
  for (int iter = 0; iter < max_iter; ++iter) {
    double max_step = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex p = eval(c, z[j]);
      const Complex dp = eval(d, z[j]);
      Complex w;
      if (std::abs(dp) > 0.0) {
        w = p / dp;
      } else {
        w = p;  // nudge off the stationary point
      }
      Complex sum{0.0, 0.0};
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const Complex diff = z[j] - z[k];
        if (std::abs(diff) < 1e-300) continue;
        sum += Complex{1.0, 0.0} / diff;
      }
      const Complex denom = Complex{1.0, 0.0} - w * sum;
      const Complex delta = std::abs(denom) > 1e-300 ? w / denom : w;
      z[j] -= delta;
      max_step = std::max(max_step, std::abs(delta) / (1.0 + std::abs(z[j])));
    }
    if (max_step < 1e-14) break;
  }

  // Newton polish; Aberth gets close, this shaves the last digits.
  for (int j = 0; j < n; ++j) {
    for (int it = 0; it < 3; ++it) {
      const Complex p = eval(c, z[j]);
      const Complex dp = eval(d, z[j]);
      if (std::abs(dp) < 1e-300) break;
      const Complex step = p / dp;
      if (!is_finite(step)) break;
      z[j] -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z[j]))) break;
    }
  }

  out.insert(out.end(), z.begin(), z.end());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace arggrad::poly
