#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "focklab/carleson.hpp"

using namespace focklab;

TEST_CASE("lattice centers") {
  CHECK(lattice_centers(1, Lattice{2.0, 0.25}).size() == 289u);
  CHECK(lattice_centers(2, Lattice{1.0, 0.5}).size() == 625u);
  CHECK_THROWS_AS(lattice_centers(1, Lattice{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Carleson constants of simple measures") {
  const RealVector r = RealVector::Ones(1);
  CHECK(carleson_constant(Measure::lebesgue(1), HalfIndex::zeros(1), r, Lattice{}).sup_estimate ==
        doctest::Approx(pi).epsilon(1e-14));
  const Measure atom = Measure::dirac(ComplexVector::Zero(1), 2.0);
  CHECK(carleson_constant(atom, HalfIndex::zeros(1), r, Lattice{}).sup_estimate == doctest::Approx(2.0));
  // Gamma(3/2)^2 * 2 * weight(0) = pi/2
  CHECK(carleson_constant(atom, HalfIndex::from_doubled({1}), r, Lattice{}).sup_estimate == doctest::Approx(pi / 2.0));
  // spacing must resolve the polydisk
  CHECK_THROWS_AS(carleson_constant(Measure::lebesgue(1), HalfIndex::zeros(1), r, Lattice{2.0, 0.75}),
                  std::invalid_argument);
  // Lebesgue measure in 2D: pi^2
  CHECK(carleson_constant(Measure::lebesgue(2), HalfIndex::zeros(2), RealVector::Ones(2), Lattice{0.5, 0.5}).sup_estimate ==
        doctest::Approx(pi * pi));
}

TEST_CASE("condition (M) scans") {
  const CarlesonReport raw = condition_M(Measure::lebesgue(1), Lattice{});
  CHECK(raw.sup_estimate == doctest::Approx(pi * std::exp(8.0)).epsilon(1e-12));
  CHECK(raw.growth_detected);
  const CarlesonReport norm = condition_M_normalized(Measure::lebesgue(1), Lattice{});
  CHECK(norm.sup_estimate == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_FALSE(norm.growth_detected);
  CHECK(norm.verdict() == "bounded-on-window");
}

TEST_CASE("form test is seeded and bounded for Lebesgue") {
  const BasisSet b(1, 10);
  const KfcReport a = kfc_verdict(Measure::lebesgue(1), MultiIndex{0}, b, {}, 42);
  const KfcReport c = kfc_verdict(Measure::lebesgue(1), MultiIndex{0}, b, {}, 42);
  CHECK(a.omega == doctest::Approx(1.0));
  CHECK(a.omega_half == doctest::Approx(1.0));
  CHECK(a.random_estimate <= a.omega + 1e-12);
  CHECK(a.random_estimate == c.random_estimate);
  CHECK(a.seed == 42u);
  CHECK_FALSE(a.growth_detected);
  // derivative form of Lebesgue: <f', f'> grows like D
  CHECK(kfc_verdict(Measure::lebesgue(1), MultiIndex{1}, b, {}, 1).growth_detected);
}

TEST_CASE("weight-shift report") {
  const WeightShiftReport w = weight_shift(Measure::gaussian(1, 1.0), HalfIndex::from_doubled({3}),
                                           HalfIndex::from_doubled({1}), RealVector::Ones(1), Lattice{1.0, 0.5});
  CHECK(w.error_mass <= 1e-12);
  CHECK(w.C_k > 0.0);
  CHECK_THROWS_AS(weight_shift(Measure::lebesgue(1), HalfIndex::from_doubled({1}), HalfIndex::from_doubled({2}),
                               RealVector::Ones(1), Lattice{}),
                  std::invalid_argument);
}

TEST_CASE("boundedness routes agree on Lebesgue") {
  const FcVerdicts v = fc_verdicts(Measure::lebesgue(1), Lattice{}, BasisSet(1, 10));
  CHECK(v.agree());
  CHECK_FALSE(v.ball_growth);
}
