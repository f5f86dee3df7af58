#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "focklab/toeplitz.hpp"

using namespace focklab;

namespace {

ComplexVector pt(cplx a) { return ComplexVector::Constant(1, a); }

}  // namespace

TEST_CASE("Lebesgue symbol is the identity") {
  for (auto [n, D] : {std::pair<std::size_t, int>{1, 16}, {2, 8}, {3, 4}}) {
    const BasisSet b(n, D);
    const ComplexMatrix T = assemble_toeplitz(Measure::lebesgue(n), b).entries;
    CHECK((T - ComplexMatrix::Identity(T.rows(), T.cols())).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("Dirac symbol entries") {
  const cplx a(0.4, -0.3);
  const BasisSet b(1, 6);
  const ComplexMatrix T = assemble_toeplitz(Measure::dirac(pt(a)), b).entries;
  for (int be = 0; be <= 6; ++be) {
    for (int al = 0; al <= 6; ++al) {
      // pi^{-1} <e_al, K_a><K_a, e_be> e^{-|a|^2} style: a^al conj(a)^be e^{-|a|^2} / (pi sqrt(al! be!))
      const cplx expect = std::pow(a, al) * std::pow(std::conj(a), be) * std::exp(-std::norm(a)) /
                          (pi * std::sqrt(std::tgamma(al + 1.0) * std::tgamma(be + 1.0)));
      CHECK(std::abs(T(be, al) - expect) <= 1e-15);
    }
  }
}

TEST_CASE("centered Gaussian symbol is diagonal with geometric entries") {
  const BasisSet b(1, 10);
  const ComplexMatrix T = assemble_toeplitz(Measure::gaussian(1, 1.0), b).entries;
  for (int j = 0; j <= 10; ++j) CHECK(T(j, j).real() == doctest::Approx(std::pow(0.5, j + 1)).epsilon(1e-12));
  CHECK((T - ComplexMatrix(T.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("coderivative of Lebesgue pairs first derivatives") {
  const BasisSet b(1, 8);
  const ComplexMatrix F = assemble_coderivative(Measure::lebesgue(1), MultiIndex{1}, MultiIndex{1}, b).entries;
  // <d e_al, d e_be> = al delta
  for (int j = 0; j <= 8; ++j) CHECK(F(j, j).real() == doctest::Approx(static_cast<double>(j)).epsilon(1e-12));
  CHECK_THROWS_AS(assemble_coderivative(Measure::lebesgue(1), MultiIndex{1}, MultiIndex{0}, b, {},
                                        HalfIndex::from_doubled({2})),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_toeplitz(Measure::lebesgue(2), b), std::invalid_argument);
}

TEST_CASE("real coderivative is the binomial sum of coderivatives") {
  const BasisSet b(1, 8);
  const Measure mu = Measure::gaussian(1, 0.9, pt(cplx(0.2, 0.3)));
  const ComplexMatrix R = assemble_real_coderivative(mu, HalfIndex::from_doubled({2}), b).entries;
  const ComplexMatrix sum = assemble_coderivative(mu, MultiIndex{2}, MultiIndex{0}, b).entries +
                            2.0 * assemble_coderivative(mu, MultiIndex{1}, MultiIndex{1}, b).entries +
                            assemble_coderivative(mu, MultiIndex{0}, MultiIndex{2}, b).entries;
  CHECK((R - sum).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("Berezin transforms of simple measures") {
  CHECK(std::abs(berezin_measure(Measure::lebesgue(1), pt(cplx(1.0, 2.0))) - 1.0) <= 1e-14);
  const cplx a(0.5, -0.5);
  const cplx z(0.1, 0.7);
  CHECK(std::abs(berezin_measure(Measure::dirac(pt(a)), pt(z)) - std::exp(-std::norm(z - a)) / pi) <= 1e-15);

  // horizontal Gaussian against a brute-force trapezoid over the plane
  const double s = 0.8;
  const Measure h = Measure::horizontal(RealMeasure::gaussian(1, s));
  const cplx zz(0.4, -1.3);
  double brute = 0.0;
  const double step = 0.01;
  for (double t = -10.0; t <= 10.0; t += step) {
    for (double u = -12.0; u <= 12.0; u += step) {
      brute += std::exp(-std::pow(zz.real() - t, 2) - std::pow(zz.imag() - u, 2) - t * t / (s * s));
    }
  }
  brute *= step * step / pi;
  CHECK(berezin_measure(h, pt(zz)).real() == doctest::Approx(brute).epsilon(1e-9));
  CHECK(berezin_measure(h, pt(zz), {}, BerezinPath::full_quadrature).real() == doctest::Approx(brute).epsilon(1e-8));
}

TEST_CASE("Berezin transform of the assembled operator") {
  const BasisSet b(1, 40);
  const Measure mu = Measure::gaussian(1, 0.7, pt(cplx(0.3, -0.2)));
  const ComplexMatrix T = assemble_toeplitz(mu, b).entries;
  const ComplexVector z = pt(cplx(0.5, 0.4));
  const BerezinOperatorValue v = berezin_operator(T, b, z);
  CHECK(v.in_domain);
  CHECK(std::abs(v.value - berezin_measure(mu, z)) <= 1e-12);

  const HalfIndex k = HalfIndex::from_doubled({2});
  const ComplexMatrix R = assemble_real_coderivative(mu, k, b).entries;
  const cplx direct = berezin_coderivative(mu, k, z);
  CHECK(std::abs(direct - 4.0 * z(0).real() * z(0).real() * berezin_measure(mu, z)) <= 1e-14);
  CHECK(std::abs(berezin_operator(R, b, z).value - direct) <= 1e-10);

  CHECK_FALSE(berezin_operator(T, BasisSet(1, 40), pt(8.0)).in_domain);
}

TEST_CASE("interior block and commutators") {
  const BasisSet b(1, 8);
  const ComplexMatrix A = assemble_toeplitz(Measure::gaussian(1, 1.0), b).entries;
  const ComplexMatrix B = assemble_toeplitz(Measure::gaussian(1, 2.0), b).entries;
  CHECK(interior_block(A, b).rows() == 5);
  CHECK(commutator_interior_norm(A, B, b) <= 1e-15);  // both diagonal
  const ComplexMatrix C = assemble_toeplitz(Measure::dirac(pt(cplx(0.5, 0.5))), b).entries;
  CHECK(commutator_interior_norm(A, C, b) > 1e-3);
  ComplexMatrix M = ComplexMatrix::Zero(9, 9);
  M(8, 8) = 5.0;
  M(1, 2) = cplx(0.0, -2.0);
  CHECK(interior_max(M, b) == doctest::Approx(2.0));
}

TEST_CASE("CSV export round trip") {
  const BasisSet b(2, 2);
  ComplexMatrix M(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) M(i, j) = cplx(i + 0.1 * j, -1.0 / (1 + i + j));
  }
  const auto dir = std::filesystem::temp_directory_path() / "focklab_csv_test";
  std::filesystem::create_directories(dir);
  write_matrix_csv(M, b, (dir / "m.csv").string(), (dir / "legend.csv").string());
  std::ifstream in(dir / "m.csv");
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 12u);
    for (int j = 0; j < 6; ++j) {
      CHECK(v[2 * j] == M(row, j).real());
      CHECK(v[2 * j + 1] == M(row, j).imag());
    }
    ++row;
  }
  CHECK(row == 6);
  std::ifstream leg(dir / "legend.csv");
  std::getline(leg, line);
  CHECK(line == "row,degree,alpha1,alpha2");
  std::getline(leg, line);
  std::getline(leg, line);
  CHECK(line == "1,1,0,1");
}
