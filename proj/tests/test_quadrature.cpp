#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdforge/errors.hpp"
#include "cdforge/quadrature.hpp"

using namespace cdforge;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
  for (int order : {2, 4, 8, 12}) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int p = 0; p <= 2 * order - 1; ++p) {
      double acc = 0.0;
      for (int i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("adaptive panels hit smooth integrands to tight tolerance") {
  auto f = [](double s) { return std::exp(s); };
  const double got = integrate_adaptive_scalar(f, 0.0, 1.0, 8);
  CHECK(std::abs(got - (std::exp(1.0) - 1.0)) < 1e-13);

  auto osc = [](double s) { return std::cos(12.0 * s); };
  const double got2 = integrate_adaptive_scalar(osc, 0.0, 2.0, 8);
  CHECK(std::abs(got2 - std::sin(24.0) / 12.0) < 1e-12);
}

TEST_CASE("nonconvergence raises numerical_error") {
  // |s - 1/pi|^{0.1} has an unbounded derivative: refinement keeps moving.
  auto rough = [](double s) { return std::pow(std::abs(s - 1.0 / M_PI), 0.1); };
  QuadratureOptions opts;
  opts.max_doublings = 3;
  opts.refine_tol = 1e-16;
  opts.fail_tol = 1e-16;
  CHECK_THROWS_AS(integrate_adaptive_scalar(rough, 0.0, 1.0, 1, opts), numerical_error);
}

TEST_CASE("degenerate interval integrates to zero") {
  auto f = [](double) { return 3.0; };
  CHECK(integrate_adaptive_scalar(f, 2.0, 2.0, 8) == 0.0);
}
