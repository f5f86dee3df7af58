#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "focklab/fock_basis.hpp"

using namespace focklab;

namespace {

double choose(int m, int k) { return std::round(std::tgamma(m + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0))); }

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  ComplexMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = cplx(g(gen), g(gen));
  }
  return Eigen::HouseholderQR<ComplexMatrix>(A).householderQ() * ComplexMatrix::Identity(n, n);
}

}  // namespace

TEST_CASE("basis size, order and interior block") {
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int D : {0, 3, 8}) {
      const BasisSet b(n, D);
      CHECK(b.size() == static_cast<std::size_t>(choose(static_cast<int>(n) + D, static_cast<int>(n))));
      CHECK(b.interior_size() == static_cast<std::size_t>(choose(static_cast<int>(n) + D / 2, static_cast<int>(n))));
      for (std::size_t i = 1; i < b.size(); ++i) CHECK(graded_less(b[i - 1], b[i]));
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.position(b[i]) == i);
    }
  }
  const BasisSet b(2, 4);
  CHECK(b.contains(MultiIndex{1, 3}));
  CHECK_FALSE(b.contains(MultiIndex{1, 4}));
  CHECK_THROWS_AS(b.position(MultiIndex{5, 0}), std::out_of_range);
  CHECK_THROWS_AS(BasisSet(4, 60), std::length_error);
  CHECK(b.sqrt_factorials()[b.position(MultiIndex{2, 2})] == doctest::Approx(2.0));
}

TEST_CASE("reproducing kernel coefficients") {
  const BasisSet b(1, 60);
  const ComplexVector z = ComplexVector::Constant(1, cplx(0.6, -0.3));
  const ComplexVector w = ComplexVector::Constant(1, cplx(-0.2, 0.9));
  // K_z(w) = e^{conj(z) w}
  CHECK(std::abs(evaluate(kernel_coefficients(z, b), w, b) - std::exp(std::conj(z(0)) * w(0))) <= 1e-14);
  CHECK(truncated_kernel_norm(z, b) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalized_kernel(z, b).norm() == doctest::Approx(1.0).epsilon(1e-14));
  // truncation is visible far out
  CHECK(truncated_kernel_norm(ComplexVector::Constant(1, 4.0), BasisSet(1, 8)) < 0.9);
}

TEST_CASE("derivatives of normalized monomials") {
  const BasisSet b(2, 6);
  FockVector f = FockVector::Zero(static_cast<Eigen::Index>(b.size()));
  f(static_cast<Eigen::Index>(b.position(MultiIndex{3, 2}))) = 1.0;  // z1^3 z2^2 / sqrt(12)
  ComplexVector z(2);
  z << cplx(0.4, 0.2), cplx(-0.7, 0.5);
  // d^{(1,1)} = 6 z1^2 z2 / sqrt(12)
  const cplx expect = 6.0 * z(0) * z(0) * z(1) / std::sqrt(12.0);
  CHECK(std::abs(evaluate_derivative(f, MultiIndex{1, 1}, z, b) - expect) <= 1e-14);
  CHECK(std::abs(evaluate(apply_derivative(f, MultiIndex{1, 1}, b), z, b) - expect) <= 1e-14);
  const ComplexMatrix d = derivative_matrix(MultiIndex{1, 0}, b);
  CHECK(std::abs(d(static_cast<Eigen::Index>(b.position(MultiIndex{2, 2})), static_cast<Eigen::Index>(b.position(MultiIndex{3, 2}))) -
                 cplx(std::sqrt(3.0))) <= 1e-14);
}

TEST_CASE("Weyl operators translate with the |h|^2/2 factor") {
  const BasisSet b(1, 60);
  const ComplexVector h = ComplexVector::Constant(1, cplx(0.3, -0.4));
  FockVector f = FockVector::Zero(static_cast<Eigen::Index>(b.size()));
  f(2) = 1.0;  // z^2 / sqrt 2
  const ComplexVector z = ComplexVector::Constant(1, cplx(0.5, 0.25));
  const auto fz = [&](cplx w) { return w * w / std::sqrt(2.0); };
  const cplx expect = std::exp(z(0) * std::conj(h(0)) - 0.5 * std::norm(h(0))) * fz(z(0) - h(0));
  CHECK(std::abs(evaluate(weyl_apply(f, h, b), z, b) - expect) <= 1e-13);
  const ComplexMatrix W = weyl_matrix(h, b);
  CHECK(std::abs(evaluate(W * f, z, b) - expect) <= 1e-13);
}

TEST_CASE("composition with a unitary is degree preserving and unitary") {
  const BasisSet b(2, 5);
  const ComplexMatrix X = random_unitary(2, 7);
  const ComplexMatrix V = composition_matrix(X, b);
  CHECK((V.adjoint() * V - ComplexMatrix::Identity(V.rows(), V.cols())).cwiseAbs().maxCoeff() <= 1e-13);
  FockVector f = FockVector::Zero(static_cast<Eigen::Index>(b.size()));
  f(static_cast<Eigen::Index>(b.position(MultiIndex{2, 1}))) = 1.0;
  ComplexVector z(2);
  z << cplx(0.3, 0.1), cplx(-0.5, 0.8);
  const ComplexVector u = X.adjoint() * z;
  const cplx expect = u(0) * u(0) * u(1) / std::sqrt(2.0);
  CHECK(std::abs(evaluate(V * f, z, b) - expect) <= 1e-14);
  CHECK_THROWS_AS(composition_matrix(ComplexMatrix::Identity(3, 3), b), std::invalid_argument);
}
