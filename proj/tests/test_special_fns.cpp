#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "arggrad/special_fns.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace arggrad;

namespace {

ZetaZeroTable load_zeta_table() {
  std::ifstream in(std::string(ARGGRAD_DATA_DIR) + "/zeta_zeros_100.txt");
  REQUIRE(in.good());
  return ingest_zeta_zeros(in);
}

bool factor_set_conjugate_closed(const FactoredFunction& f) {
  for (const Factor& fac : f.factors()) {
    Factor mirrored = fac;
    bool found = false;
    std::visit(
        [](auto& b) {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>)
            b.rho = std::conj(b.rho);
          else if constexpr (std::is_same_v<T, ExponentialBase>)
            b.c = std::conj(b.c);
          else
            b.a = std::conj(b.a);
        },
        mirrored.base);
    for (const Factor& other : f.factors()) {
      if (other.base.index() != mirrored.base.index()) continue;
      if (other.multiplicity != mirrored.multiplicity) continue;
      const bool same = std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            const auto& o = std::get<T>(other.base);
            if constexpr (std::is_same_v<T, LinearBase> || std::is_same_v<T, ScaledBase>)
              return b.rho == o.rho;
            else if constexpr (std::is_same_v<T, ExponentialBase>)
              return b.c == o.c;
            else
              return b.a == o.a;
          },
          mirrored.base);
      if (same) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gamma model reproduces Gamma(1) within truncation error") {
  const GammaModel g = build_gamma(100);
  const Complex v = evaluate(g.model, ComplexPoint(1, 0));
  CHECK(std::abs(v.imag()) < 1e-14);
  CHECK(std::abs(v.real() - 1.0) < 0.02);  // truncation error shrinks like 1/n

  // closed-form value of the truncated product at s = 1: e^{H_n - g} / (n+1)
  double harmonic = 0.0;
  for (int k = 1; k <= 100; ++k) harmonic += 1.0 / k;
  const double expected = std::exp(harmonic - kEulerGamma) / 101.0;
  CHECK(v.real() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("gamma model pole list") {
  const GammaModel g = build_gamma(50);
  const auto [zeros, poles] = zeros_and_poles(g.model);
  CHECK(zeros.empty());
  REQUIRE(poles.size() == 51);
  for (int k = 0; k <= 50; ++k) {
    bool found = false;
    for (const auto& [p, m] : poles)
      if (p == Complex{-static_cast<double>(k), 0.0} && m == 1) found = true;
    CHECK(found);
  }
}

TEST_CASE("gamma factor-sum gradient is positive above the axis") {
  const GammaModel g = build_gamma(1000);
  const ArgGradient grad = grad_factor_sum(g.model, ComplexPoint(0, 1));
  CHECK(grad.d_sigma > 0.0);
}

TEST_CASE("gamma_grad matches the factor-sum route") {
  const GammaModel g = build_gamma(500);
  for (const ComplexPoint p : {ComplexPoint(0, 1), ComplexPoint(-3.3, 2.0), ComplexPoint(2, -4)}) {
    const GammaGradient direct = gamma_grad(g, p);
    const ArgGradient via_factors = grad_factor_sum(g.model, p);
    CHECK(direct.grad.d_sigma == doctest::Approx(via_factors.d_sigma).epsilon(1e-12));
    CHECK(direct.grad.d_t == doctest::Approx(via_factors.d_t).epsilon(1e-12));
  }
}

TEST_CASE("gamma_grad first term dominates at (0, 1)") {
  const GammaModel g = build_gamma(100);
  const GammaGradient grad = gamma_grad(g, ComplexPoint(0, 1));
  CHECK(grad.grad.d_sigma > 0.9);  // leading term t/(t^2+sigma^2) is exactly 1
  CHECK(grad.d_sigma_tail.lo >= 0.0);
  CHECK(grad.d_sigma_tail.hi > 0.0);
}

TEST_CASE("gamma_grad is small near the positive digamma zero") {
  const GammaModel g = build_gamma(2000);
  const GammaGradient grad = gamma_grad(g, ComplexPoint(1.4616321, 0.001));
  CHECK(grad.grad.norm() < 0.01);
}

TEST_CASE("gamma_grad conjugate symmetry is exact") {
  const GammaModel g = build_gamma(200);
  const GammaGradient up = gamma_grad(g, ComplexPoint(-2.4, 1.7));
  const GammaGradient down = gamma_grad(g, ComplexPoint(-2.4, -1.7));
  CHECK(up.grad.d_sigma == -down.grad.d_sigma);
  CHECK(up.grad.d_t == down.grad.d_t);
}

TEST_CASE("gamma_grad guards its preconditions") {
  const GammaModel g = build_gamma(20);
  CHECK_THROWS_AS(gamma_grad(g, ComplexPoint(15, 0.5)), TruncationTooSmall);
  CHECK_THROWS_AS(gamma_grad(g, ComplexPoint(-3.0, 0.01)), NearSingularity);
}

TEST_CASE("doubling the truncation moves the gradient less than the tail bound") {
  const GammaModel g1 = build_gamma(2000);
  const GammaModel g2 = build_gamma(4000);
  std::uint64_t state = 99;
  for (int i = 0; i < 100; ++i) {
    const double sigma = arggrad::uniform_double(state, -10, 10);
    const double t = arggrad::uniform_double(state, -10, 10);
    ComplexPoint p(sigma, t);
    GammaGradient a, b;
    try {
      a = gamma_grad(g1, p);
      b = gamma_grad(g2, p);
    } catch (const NearSingularity&) {
      continue;
    }
    const TailInterval ts = g1.tail_interval(PartialAxis::Sigma, sigma, t);
    const TailInterval tt = g1.tail_interval(PartialAxis::T, sigma, t);
    CHECK(std::abs(a.grad.d_sigma - b.grad.d_sigma) <=
          std::max(std::abs(ts.lo), std::abs(ts.hi)) + 1e-14);
    CHECK(std::abs(a.grad.d_t - b.grad.d_t) <= std::max(std::abs(tt.lo), std::abs(tt.hi)) + 1e-14);
  }
}

TEST_CASE("digamma real zeros match the independent oracle") {
  const std::vector<double> zeros = digamma_real_zeros(5, 2000);
  REQUIRE(zeros.size() == 5);
  for (int i = 0; i < 5; ++i)
    CHECK(zeros[i] == doctest::Approx(testsupport::kDigammaZeros[i]).epsilon(1e-8));
  // headline values, frozen from the oracle
  CHECK(std::abs(zeros[0] - 1.46163214) < 1e-6);
  CHECK(std::abs(zeros[1] - (-0.50408300)) < 1e-6);
}

TEST_CASE("digamma zero count inside (-5, 2)") {
  // One zero per adjacent-negative-integer pair plus the positive one:
  // (-1,0), ..., (-5,-4) all intersect (-5, 2), so six zeros in total.
  const std::vector<double> zeros = digamma_real_zeros(6, 2000);
  int inside = 0;
  for (double z : zeros)
    if (z > -5.0 && z < 2.0) ++inside;
  CHECK(inside == 6);
  const auto oracle = testsupport::digamma_oracle_zeros(6, 100000);
  int oracle_inside = 0;
  for (double z : oracle)
    if (z > -5.0 && z < 2.0) ++oracle_inside;
  CHECK(oracle_inside == 6);
}

TEST_CASE("digamma zeros refuse an inadequate truncation") {
  CHECK_THROWS_AS(digamma_real_zeros(5, 10), TruncationTooSmall);
  CHECK_THROWS_AS(digamma_real_zeros(0, 1000), InvalidModel);
  CHECK_THROWS_AS(digamma_real_zeros(21, 1000), InvalidModel);
}

TEST_CASE("gamma derivative zeros via locate + refinement") {
  const Rectangle region(-6, 4, -5, 5);
  const LocateReport report = gamma_derivative_zeros(region, NumericPolicy{}, 600, 20000, 40);
  std::vector<double> re;
  for (const RootCandidate& r : report.roots) {
    if (r.status != RootStatus::Confirmed) continue;
    CHECK(std::abs(r.point.t) <= 1e-7);
    re.push_back(r.point.sigma);
  }
  // every digamma zero in (-6, 4): positive plus one per negative unit interval
  REQUIRE(re.size() == 7);
  for (int i = 0; i < 7; ++i) {
    bool matched = false;
    for (double x : re)
      if (std::abs(x - testsupport::kDigammaZeros[i]) < 1e-6) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("zeta zero ingestion") {
  std::istringstream ok("14.134725\n21.022040\n25.010858\n");
  const ZetaZeroTable t1 = ingest_zeta_zeros(ok);
  REQUIRE(t1.ordinates.size() == 3);
  CHECK(t1.ordinates[0] == doctest::Approx(14.134725));
  CHECK(!t1.source_digest.empty());

  std::istringstream commented("# comment\n14.134725\n");
  CHECK(ingest_zeta_zeros(commented).ordinates.size() == 1);

  std::istringstream unordered("21.0\n14.1\n");
  CHECK_THROWS_AS(ingest_zeta_zeros(unordered), NonMonotone);

  std::istringstream garbage("14.1\nnot-a-number\n");
  try {
    ingest_zeta_zeros(garbage);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }

  std::istringstream negative("-3.0\n");
  CHECK_THROWS_AS(ingest_zeta_zeros(negative), ParseError);
}

TEST_CASE("xi model construction") {
  ZetaZeroTable table;
  table.ordinates = {14.134725, 21.022040, 25.010858};

  const XiModel one = build_xi(table, 1, 0.5);
  CHECK(one.model.factors().size() == 3);  // conjugate pair + constant
  const Complex at_half = evaluate(one.model, ComplexPoint(0.5, 0));
  CHECK(std::abs(at_half.imag()) < 1e-15 * std::abs(at_half));

  const XiModel off = build_xi(table, 2, 0.4);
  CHECK(off.model.factors().size() == 2 * 4 + 1);  // reflected pairs added
  CHECK(factor_set_conjugate_closed(off.model));

  CHECK_THROWS_AS(build_xi(table, 4, 0.5), InvalidModel);
  CHECK_THROWS_AS(build_xi(table, 1, 0.0), InvalidModel);
  CHECK_THROWS_AS(build_xi(table, 1, 1.0), InvalidModel);
}

TEST_CASE("xi gradient sign outside the strip") {
  const ZetaZeroTable table = load_zeta_table();
  const XiModel xi = build_xi(table, 100, 0.5);
  for (double t : {-40.0, 0.0, 17.5, 55.0}) {
    CHECK(grad_factor_sum(xi.model, ComplexPoint(2, t)).d_t > 0.0);
    CHECK(grad_factor_sum(xi.model, ComplexPoint(-1, t)).d_t < 0.0);
  }
  CHECK(factor_set_conjugate_closed(xi.model));
}

TEST_CASE("gamma model factor set is conjugate closed") {
  CHECK(factor_set_conjugate_closed(build_gamma(25).model));
}

TEST_CASE("critical-line scan finds one root per ordinate gap") {
  const ZetaZeroTable table = load_zeta_table();
  const XiModel xi = build_xi(table, 100, 0.5);
  const double t_lo = xi.zero_ordinates[0];
  const double t_hi = xi.zero_ordinates[3];
  const XiLineScan scan = xi_critical_line_derivative_zeros(xi, t_lo, t_hi, NumericPolicy{});
  REQUIRE(scan.roots_per_interval.size() == 3);
  for (int c : scan.roots_per_interval) CHECK(c == 1);
  REQUIRE(scan.root_ts.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto oracle = testsupport::xi_line_oracle_roots(xi.zero_ordinates,
                                                          xi.zero_ordinates[j],
                                                          xi.zero_ordinates[j + 1]);
    REQUIRE(oracle.size() == 1);
    CHECK(std::abs(scan.root_ts[j] - oracle[0]) < 1e-6);
  }
  CHECK(scan.right_band.ok());
  CHECK(scan.left_band.ok());
}

TEST_CASE("critical-line scan rejects off-line models and bad ranges") {
  const ZetaZeroTable table = load_zeta_table();
  const XiModel off = build_xi(table, 10, 0.4);
  CHECK_THROWS_AS(
      xi_critical_line_derivative_zeros(off, table.ordinates[0], table.ordinates[2],
                                        NumericPolicy{}),
      InvalidModel);
  const XiModel on = build_xi(table, 10, 0.5);
  CHECK_THROWS_AS(xi_critical_line_derivative_zeros(on, 1.0, 20.0, NumericPolicy{}),
                  InvalidModel);
}

TEST_CASE("xi tail margin shrinks with distance and truncation") {
  const ZetaZeroTable table = load_zeta_table();
  const XiModel xi_small = build_xi(table, 50, 0.5);
  const XiModel xi_big = build_xi(table, 100, 0.5);
  const Rectangle region(1.05, 3, -60, 60);
  const double tail_small = xi_tail_margin(xi_small, table, region, PartialAxis::T);
  const double tail_big = xi_tail_margin(xi_big, table, region, PartialAxis::T);
  CHECK(tail_big < tail_small);
  CHECK(tail_big > 0.0);
}

TEST_CASE("xi strip certificates beat the omitted-ordinate tail at n = 100") {
  const ZetaZeroTable table = load_zeta_table();
  const XiModel xi = build_xi(table, 100, 0.5);
  for (const Rectangle& region : {Rectangle(1.05, 3, -60, 60), Rectangle(-2, -0.05, -60, 60)}) {
    const CertifyOutcome cert = certify_termwise(xi.model, region, PartialAxis::T);
    REQUIRE(cert.ok());
    CHECK(cert.certificate->margin > xi_tail_margin(xi, table, region, PartialAxis::T));
  }
}
