#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "focklab/quadrature.hpp"
#include "focklab/types.hpp"

using namespace focklab;

TEST_CASE("two-point Gauss-Hermite closed form") {
  const QuadRule r = gauss_hermite(2);
  REQUIRE(r.nodes.size() == 2);
  CHECK(r.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(sqrt_pi / 2.0).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(sqrt_pi / 2.0).epsilon(1e-15));
}

TEST_CASE("Gauss-Hermite reproduces even Gaussian moments") {
  const QuadRule r = gauss_hermite(30);
  for (int m = 0; m < 30; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * m);
    // \int t^{2m} e^{-t^2} dt = Gamma(m + 1/2)
    CHECK(s == doctest::Approx(std::tgamma(m + 0.5)).epsilon(1e-11));
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials on [-1, 1]") {
  const QuadRule r = gauss_legendre(12);
  for (int m = 0; m < 12; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * m);
    CHECK(s == doctest::Approx(2.0 / (2 * m + 1)).epsilon(1e-13));
  }
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_hermite(max_quadrature_order + 1), std::invalid_argument);
  CHECK_NOTHROW(gauss_hermite(max_quadrature_order));
}

TEST_CASE("tensor rule and windowed integrals") {
  const TensorRule rule = TensorRule::gauss_hermite(2, 10);
  CHECK(rule.size() == 100u);
  // \int\int x^2 y^4 e^{-x^2-y^2} = Gamma(3/2) Gamma(5/2)
  const cplx v = integrate_gaussian([](std::span<const double> t) { return cplx(t[0] * t[0] * std::pow(t[1], 4)); }, rule);
  CHECK(v.real() == doctest::Approx(std::tgamma(1.5) * std::tgamma(2.5)).epsilon(1e-13));

  // \int t^2 e^{-a (t-c)^2} dt = sqrt(pi/a) (c^2 + 1/(2a))
  const double a = 2.5;
  const double c = 0.7;
  const double center[] = {c};
  const cplx w = integrate_gaussian_window([](std::span<const double> t) { return cplx(t[0] * t[0]); }, a, center, 8);
  CHECK(w.real() == doctest::Approx(std::sqrt(pi / a) * (c * c + 0.5 / a)).epsilon(1e-13));
  CHECK_THROWS_AS(integrate_gaussian_window([](std::span<const double>) { return cplx(1.0); }, -1.0, center, 8),
                  std::invalid_argument);
}

TEST_CASE("non-finite integrands are reported with the node") {
  const TensorRule rule = TensorRule::gauss_hermite(1, 4);
  try {
    integrate_gaussian([](std::span<const double> t) { return t[0] > 0 ? cplx(std::numeric_limits<double>::infinity()) : cplx(1.0); },
                       rule);
    FAIL("expected NonFiniteIntegrand");
  } catch (const NonFiniteIntegrand& e) {
    REQUIRE(e.node().size() == 1);
    CHECK(e.node()[0] > 0.0);
  }
}
