#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "focklab/lagrangian.hpp"
#include "focklab/toeplitz.hpp"

using namespace focklab;

namespace {

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  ComplexMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = cplx(g(gen), g(gen));
  }
  return Eigen::HouseholderQR<ComplexMatrix>(A).householderQ() * ComplexMatrix::Identity(n, n);
}

// U R^n as a real 2n x n frame
RealMatrix frame_from_unitary(const ComplexMatrix& U) {
  const auto n = U.rows();
  RealMatrix B(2 * n, n);
  B.topRows(n) = U.real();
  B.bottomRows(n) = U.imag();
  return B;
}

ComplexMatrix scalar(cplx v) { return ComplexMatrix::Constant(1, 1, v); }

}  // namespace

TEST_CASE("symplectic form and Lagrangian checks") {
  RealVector ex(2), ey(2);
  ex << 1.0, 0.0;
  ey << 0.0, 1.0;
  CHECK(symplectic_form(ex, ey) == -1.0);
  CHECK(symplectic_form(ey, ex) == 1.0);
  CHECK(is_lagrangian(frame_real(2)).lagrangian);
  CHECK(is_lagrangian(frame_diagonal(2)).lagrangian);
  RealMatrix mixed = RealMatrix::Zero(4, 2);
  mixed(0, 0) = 1.0;  // x1
  mixed(2, 1) = 1.0;  // y1
  const LagrangianCheck c = is_lagrangian(mixed);
  CHECK_FALSE(c.lagrangian);
  CHECK(c.max_violation == doctest::Approx(1.0));
  RealMatrix degenerate = RealMatrix::Zero(4, 2);
  degenerate(0, 0) = degenerate(0, 1) = 1.0;
  CHECK(is_lagrangian(degenerate).rank == 1);
  CHECK_THROWS_AS(rotation_to_vertical(mixed), std::invalid_argument);
}

TEST_CASE("rotations of the standard frames") {
  const ComplexMatrix Xr = rotation_to_vertical(frame_real(1));
  CHECK(std::abs(Xr(0, 0) - cplx(0, 1)) <= 1e-15);
  CHECK(validate_rotation(frame_real(1), scalar(cplx(0, -1))).valid);
  const ComplexMatrix Xd = rotation_to_vertical(frame_diagonal(1));
  CHECK(std::abs(Xd(0, 0) - cplx(1, 1) / std::sqrt(2.0)) <= 1e-15);
  CHECK(validate_rotation(frame_diagonal(1), scalar(cplx(1, -1) / std::sqrt(2.0))).real_part == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(validate_rotation(frame_diagonal(1), scalar(cplx(0.5, -0.5))).valid);
  CHECK(std::abs(rotation_to_vertical(frame_imaginary(1))(0, 0) - 1.0) <= 1e-15);
}

TEST_CASE("random Lagrangian frames rotate onto iR^n") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ComplexMatrix U = random_unitary(2, seed);
    RealMatrix B = frame_from_unitary(U);
    B.col(1) = 0.3 * B.col(0) + 2.0 * B.col(1);  // non-orthonormal spanning set
    const ComplexMatrix X = rotation_to_vertical(B);
    const RotationCheck rc = validate_rotation(B, X);
    CHECK(rc.unitarity <= 1e-12);
    CHECK(rc.real_part <= 1e-12);
    // a second valid rotation differs by an automorphism of iR^n
    const RealMatrix Qr = RealMatrix(random_unitary(2, seed + 10).real()).householderQr().householderQ();
    const ComplexMatrix Q = Qr.cast<cplx>();
    const ComplexMatrix Y = Q * X;
    REQUIRE(validate_rotation(B, Y).valid);
    const ComplexMatrix YX = Y * X.adjoint();
    for (int j = 0; j < 2; ++j) {
      ComplexVector iv = ComplexVector::Zero(2);
      iv(j) = cplx(0, 1);
      CHECK((YX * iv).real().cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("pushforward conjugates by the composition operator") {
  const BasisSet b(2, 4);
  const ComplexMatrix X = random_unitary(2, 5);
  ComplexVector a(2);
  a << cplx(0.3, -0.1), cplx(0.2, 0.4);
  const Measure mu = Measure::atoms({a, ComplexVector::Zero(2)}, {1.0, cplx(0.5, 0.5)});
  const ComplexMatrix V = composition_matrix(X, b);
  const ComplexMatrix lhs = assemble_toeplitz(pushforward(mu, X), b).entries;
  const ComplexMatrix rhs = V.adjoint() * assemble_toeplitz(mu, b).entries * V;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("invariance tests and the rotated coderivative") {
  const BasisSet b(1, 16);
  const Measure h = Measure::horizontal(RealMeasure::gaussian(1, 1.0));
  const LagrangianFrame vertical = LagrangianFrame::from_basis(frame_imaginary(1));
  const InvarianceReport inv = l_invariance_test(h, vertical, b);
  CHECK(inv.invariant);
  const InvarianceReport off = l_invariance_test(Measure::dirac(ComplexVector::Constant(1, cplx(0.3, 0.4))), vertical, b);
  CHECK_FALSE(off.invariant);

  // an L_x-invariant measure built from a horizontal one
  const LagrangianFrame lx = LagrangianFrame::from_basis(frame_real(1));
  const Measure invariant = pushforward(h, lx.X);
  CHECK(l_invariance_test(invariant, lx, b).invariant);

  const HalfIndex k = HalfIndex::from_doubled({2});
  const BasisSet b8(1, 8);
  const ComplexMatrix L = assemble_L_real_coderivative(h, k, vertical, b8).entries;
  CHECK((L - assemble_real_coderivative(h, k, b8).entries).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS_AS(LagrangianFrame::with_rotation(frame_real(1), scalar(1.0)), std::invalid_argument);
}
