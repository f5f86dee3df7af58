#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "focklab/measures.hpp"
#include "focklab/quadrature.hpp"

using namespace focklab;

namespace {

ComplexVector pt(cplx a) { return ComplexVector::Constant(1, a); }
ComplexVector pt(cplx a, cplx b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("Lebesgue moments are pi^n alpha! on the diagonal") {
  const Measure leb = Measure::lebesgue(1);
  for (int a = 0; a <= 8; ++a) {
    CHECK(std::abs(moment(leb, MultiIndex{a}, MultiIndex{a}) - cplx(pi * std::tgamma(a + 1.0))) <=
          1e-12 * pi * std::tgamma(a + 1.0));
    CHECK(std::abs(moment(leb, MultiIndex{a}, MultiIndex{a + 1})) == 0.0);
  }
  const Measure leb2 = Measure::lebesgue(2);
  CHECK(std::abs(moment(leb2, MultiIndex{2, 1}, MultiIndex{2, 1}) - cplx(pi * pi * 2.0)) <= 1e-12);
}

TEST_CASE("Gaussian moments from the radial integral") {
  // \int |w|^{2a} e^{-(1 + 1/s^2)|w|^2} dA = pi a! / (1 + 1/s^2)^{a+1}
  for (double s : {0.5, 1.0, 2.0}) {
    const Measure g = Measure::gaussian(1, s);
    const double c = 1.0 + 1.0 / (s * s);
    for (int a = 0; a <= 6; ++a) {
      const double expect = pi * std::tgamma(a + 1.0) / std::pow(c, a + 1);
      CHECK(moment(g, MultiIndex{a}, MultiIndex{a}).real() == doctest::Approx(expect).epsilon(1e-11));
    }
    CHECK(std::abs(moment(g, MultiIndex{2}, MultiIndex{0})) <= 1e-13);
  }
}

TEST_CASE("atomic moments are point evaluations") {
  const cplx a(0.3, -0.7);
  const cplx b(-1.1, 0.2);
  const Measure mu = Measure::atoms({pt(a), pt(b)}, {cplx(0.5), cplx(0.0, 2.0)});
  const auto term = [](cplx w, int p, int q) { return std::pow(w, p) * std::pow(std::conj(w), q) * std::exp(-std::norm(w)); };
  for (int p = 0; p <= 4; ++p) {
    for (int q = 0; q <= 4; ++q) {
      const cplx expect = 0.5 * term(a, p, q) + cplx(0.0, 2.0) * term(b, p, q);
      CHECK(std::abs(moment(mu, MultiIndex{p}, MultiIndex{q}) - expect) <= 1e-14);
    }
  }
}

TEST_CASE("horizontal Dirac moments integrate along the imaginary axis") {
  // \int (iy)^p (-iy)^q e^{-y^2} dy = i^p (-i)^q Gamma((p+q+1)/2) for p+q even
  const Measure h = Measure::horizontal(RealMeasure::dirac(RealVector::Zero(1)));
  for (int p = 0; p <= 5; ++p) {
    for (int q = 0; q <= 5; ++q) {
      cplx expect = 0.0;
      if ((p + q) % 2 == 0) expect = std::pow(cplx(0, 1), p) * std::pow(cplx(0, -1), q) * std::tgamma((p + q + 1) / 2.0);
      CHECK(std::abs(moment(h, MultiIndex{p}, MultiIndex{q}) - expect) <= 1e-12);
    }
  }
}

TEST_CASE("moment table agrees with single moments") {
  const Measure g = Measure::gaussian(2, 1.3, pt(cplx(0.2, 0.1), cplx(-0.3, 0.0)));
  const MomentTable t = moment_table(g, 3);
  CHECK(t.indices.size() == 10u);
  const MultiIndex a{1, 2};
  const MultiIndex b{0, 1};
  CHECK(std::abs(t.values(static_cast<Eigen::Index>(t.position(a)), static_cast<Eigen::Index>(t.position(b))) -
                 moment(g, a, b)) <= 1e-12);
  CHECK_THROWS_AS(t.position(MultiIndex{4, 0}), std::out_of_range);
  const auto idx = enumerate_multi_indices(2, 2);
  REQUIRE(idx.size() == 6u);
  CHECK(idx[1] == MultiIndex{0, 1});
  CHECK(idx[2] == MultiIndex{1, 0});
  CHECK(idx[5] == MultiIndex{2, 0});
}

TEST_CASE("weights collapse and vanish at zero") {
  const Measure g = Measure::gaussian(1, 1.0);
  const WeightExponent p = WeightExponent::from_doubled({2});
  const WeightExponent q = WeightExponent::from_doubled({-1});
  const Measure nested = weight(weight(g, p), q);
  const Measure direct = weight(g, p + q);
  CHECK(std::abs(moment(nested, MultiIndex{2}, MultiIndex{2}) - moment(direct, MultiIndex{2}, MultiIndex{2})) <= 1e-14);
  CHECK(weight(g, WeightExponent::zeros(1)).as<Measure::Weighted>() == nullptr);
  CHECK(weight(g, WeightExponent::zeros(1)).as<Measure::Density>() != nullptr);
  const cplx z[] = {cplx(1.0, 2.0)};
  CHECK(weight_function(WeightExponent::from_doubled({2}), z) == doctest::Approx(2.0 * 5.0));
  CHECK(weight_function(WeightExponent::from_doubled({-1}), z) == doctest::Approx(1.0 / std::sqrt(10.0)));
}

TEST_CASE("pushforward moves atoms by X^*") {
  const double c = std::cos(0.4);
  const double s = std::sin(0.4);
  ComplexMatrix X(2, 2);
  X << cplx(c, 0), cplx(0, s), cplx(0, s), cplx(c, 0);
  REQUIRE(is_unitary(X));
  const ComplexVector a = pt(cplx(0.5, 0.1), cplx(-0.2, 0.4));
  const Measure pushed = pushforward(Measure::dirac(a), X);
  const Measure moved = Measure::dirac(X.adjoint() * a);
  for (const auto& [p, q] : {std::pair{MultiIndex{1, 0}, MultiIndex{0, 2}}, std::pair{MultiIndex{2, 1}, MultiIndex{1, 1}}}) {
    CHECK(std::abs(moment(pushed, p, q) - moment(moved, p, q)) <= 1e-14);
  }
  ComplexMatrix bad = X;
  bad(0, 0) *= 1.01;
  CHECK_THROWS_AS(pushforward(Measure::lebesgue(2), bad), std::invalid_argument);
  // (mu_X)_{X^*} is mu again
  const Measure h = Measure::horizontal(RealMeasure::gaussian(2, 1.0));
  CHECK(pushforward(pushforward(h, X), X.adjoint()).as<Measure::Horizontal>() != nullptr);
}

TEST_CASE("polydisk masses") {
  const RealVector r1 = RealVector::Ones(1);
  CHECK(ball_mass(Measure::lebesgue(1), pt(cplx(3.0, -2.0)), r1).real() == doctest::Approx(pi).epsilon(1e-14));
  const Measure two = Measure::atoms({pt(0.0), pt(cplx(0.9, 0.0))}, {cplx(1.0), cplx(2.0)});
  CHECK(ball_mass(two, pt(0.0), r1).real() == doctest::Approx(3.0));
  CHECK(ball_mass(two, pt(cplx(-0.5, 0.0)), r1).real() == doctest::Approx(1.0));

  // \int_{|w|<r} e^{-|w|^2/s^2} dA = pi s^2 (1 - e^{-r^2/s^2})
  const double s = 0.8;
  const double r = 1.2;
  CHECK(ball_mass(Measure::gaussian(1, s), pt(0.0), RealVector::Constant(1, r)).real() ==
        doctest::Approx(pi * s * s * (1.0 - std::exp(-r * r / (s * s)))).epsilon(1e-8));

  // horizontal Dirac: length of the vertical chord through the disk
  const Measure hd = Measure::horizontal(RealMeasure::dirac(RealVector::Zero(1)));
  CHECK(ball_mass(hd, pt(cplx(0.5, 3.0)), r1).real() == doctest::Approx(2.0 * std::sqrt(0.75)).epsilon(1e-12));
  CHECK(ball_mass(hd, pt(cplx(1.5, 0.0)), r1).real() == doctest::Approx(0.0));
  CHECK_THROWS_AS(ball_mass(Measure::lebesgue(1), pt(0.0), RealVector::Zero(1)), std::invalid_argument);
}

TEST_CASE("variation and real-measure detection") {
  const Measure mu = Measure::atoms({pt(0.0), pt(1.0)}, {cplx(-2.0), cplx(0.0, 3.0)});
  CHECK_FALSE(is_real_measure(mu));
  const Measure v = variation(mu);
  CHECK(is_real_measure(v));
  CHECK(moment(v, MultiIndex{0}, MultiIndex{0}).real() == doctest::Approx(2.0 + 3.0 * std::exp(-1.0)));
}

TEST_CASE("non-finite density values are rejected") {
  const Measure bad = Measure::density(1, [](const ComplexVector& w) {
    return w(0).real() > 0.0 ? cplx(std::numeric_limits<double>::quiet_NaN()) : cplx(1.0);
  });
  CHECK_THROWS_AS(moment(bad, MultiIndex{0}, MultiIndex{0}), NonFiniteIntegrand);
}
