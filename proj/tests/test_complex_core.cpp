#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>

#include "arggrad/complex_core.hpp"
#include "support/generators.hpp"

using namespace arggrad;

TEST_CASE("complex arithmetic basics") {
  CHECK(complex_mul({1, 2}, {3, -1}) == Complex{5, 5});
  CHECK(complex_div({1, 1}, {1, 1}) == Complex{1, 0});
  CHECK(complex_abs({3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(complex_add({1, 2}, {3, 4}) == Complex{4, 6});
}

TEST_CASE("division by exact zero is a domain error") {
  CHECK_THROWS_AS(complex_div({1, 0}, {0, 0}), DivisionByZero);
}

TEST_CASE("mul/div round trip within 8 ulps of the modulus") {
  // Componentwise ulps cannot hold when one component is tiny against the
  // modulus (the products cancel), so the bound is taken at |a|.
  const double half_eps = 0x1.0p-53;
  std::uint64_t state = 12345;
  for (int i = 0; i < 5000; ++i) {
    const Complex a{testsupport::urand(state, -10, 10), testsupport::urand(state, -10, 10)};
    const double mag = std::pow(10.0, testsupport::urand(state, -6, 6));
    const double angle = testsupport::urand(state, 0, 2 * M_PI);
    const Complex b{mag * std::cos(angle), mag * std::sin(angle)};
    const Complex back = complex_div(complex_mul(a, b), b);
    CHECK(std::abs(back - a) <= 8 * half_eps * std::abs(a));
  }
}

TEST_CASE("abs squared equals Re(a * conj(a))") {
  std::uint64_t state = 777;
  for (int i = 0; i < 1000; ++i) {
    const Complex a{testsupport::urand(state, -50, 50), testsupport::urand(state, -50, 50)};
    const double lhs = complex_abs(a) * complex_abs(a);
    const double rhs = (a * std::conj(a)).real();
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::abs(rhs));
  }
}

TEST_CASE("ipow handles negative exponents") {
  const Complex z{2, 1};
  CHECK(ipow(z, 0) == Complex{1, 0});
  CHECK(std::abs(ipow(z, 3) - z * z * z) <= 1e-14 * std::abs(z * z * z));
  CHECK(std::abs(ipow(z, -2) - 1.0 / (z * z)) <= 1e-14);
}

TEST_CASE("domain types reject non-finite and inverted input") {
  CHECK_THROWS_AS(ComplexPoint(std::nan(""), 0.0), InvalidModel);
  CHECK_THROWS_AS(ComplexPoint(0.0, std::numeric_limits<double>::infinity()), InvalidModel);
  CHECK_THROWS_AS(Rectangle(1.0, -1.0, 0.0, 1.0), InvalidModel);
  CHECK_THROWS_AS(Rectangle(0.0, 1.0, 2.0, 2.0), InvalidModel);
}

TEST_CASE("numeric policy validation") {
  NumericPolicy ok;
  CHECK_NOTHROW(ok.validate());

  NumericPolicy negative = ok;
  negative.grad_tol = -1.0;
  CHECK_THROWS_AS(negative.validate(), InvalidModel);

  NumericPolicy inverted = ok;
  inverted.dedup_radius = inverted.singular_radius * 2;
  CHECK_THROWS_AS(inverted.validate(), InvalidModel);
}

TEST_CASE("rectangle containment") {
  const Rectangle r(-1, 1, 0, 2);
  CHECK(r.contains(ComplexPoint(0, 1)));
  CHECK(r.contains(ComplexPoint(-1, 0)));  // boundary included
  CHECK(!r.contains(ComplexPoint(1.5, 1)));
}
