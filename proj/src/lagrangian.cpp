#include "focklab/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "focklab/spectral.hpp"

namespace focklab {

namespace {

std::size_t frame_dim(const RealMatrix& basis) {
  const auto cols = basis.cols();
  if (cols < 1 || basis.rows() != 2 * cols) {
    throw std::invalid_argument("Lagrangian frame: expected n vectors in R^{2n}, got " + std::to_string(cols) +
                                " vectors of length " + std::to_string(basis.rows()));
  }
  return static_cast<std::size_t>(cols);
}

}  // namespace

ComplexMatrix complex_identify(const RealMatrix& basis) {
  const auto n = static_cast<Eigen::Index>(frame_dim(basis));
  ComplexMatrix A(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index j = 0; j < n; ++j) A(j, c) = cplx(basis(j, c), basis(n + j, c));
  }
  return A;
}

double symplectic_form(const RealVector& u, const RealVector& v) {
  if (u.size() != v.size() || u.size() % 2 != 0) throw std::invalid_argument("symplectic_form: bad vector sizes");
  const Eigen::Index n = u.size() / 2;
  return u.tail(n).dot(v.head(n)) - u.head(n).dot(v.tail(n));
}

LagrangianCheck is_lagrangian(const RealMatrix& basis, double tol) {
  const std::size_t n = frame_dim(basis);
  LagrangianCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.max_violation = std::max(out.max_violation, std::abs(symplectic_form(basis.col(static_cast<Eigen::Index>(i)),
                                                                               basis.col(static_cast<Eigen::Index>(j)))));
    }
  }
  Eigen::ColPivHouseholderQR<RealMatrix> qr(basis);
  qr.setThreshold(1e-10);
  out.rank = static_cast<int>(qr.rank());
  out.lagrangian = out.max_violation <= tol && out.rank == static_cast<int>(n);
  return out;
}

ComplexMatrix rotation_to_vertical(const RealMatrix& basis) {
  const LagrangianCheck check = is_lagrangian(basis);
  if (!check.lagrangian) {
    throw std::invalid_argument("rotation_to_vertical: frame is not Lagrangian (rank " + std::to_string(check.rank) +
                                ", max |omega_0| " + std::to_string(check.max_violation) + ")");
  }
  const ComplexMatrix A = complex_identify(basis);
  Eigen::JacobiSVD<ComplexMatrix> svd(A);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) < 1e-10 * std::max(1.0, s(0))) {
    throw std::invalid_argument("rotation_to_vertical: numerically degenerate frame");
  }
  const ComplexMatrix G = A.adjoint() * A;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(G);
  return cplx(0.0, 1.0) * es.operatorInverseSqrt() * A.adjoint();
}

RotationCheck validate_rotation(const RealMatrix& basis, const ComplexMatrix& X, double tol) {
  const std::size_t n = frame_dim(basis);
  if (static_cast<std::size_t>(X.rows()) != n || X.rows() != X.cols()) {
    throw std::invalid_argument("validate_rotation: X must be n x n");
  }
  RotationCheck out;
  out.unitarity = (X.adjoint() * X - ComplexMatrix::Identity(X.rows(), X.cols())).cwiseAbs().maxCoeff();
  const ComplexMatrix image = X * complex_identify(basis);
  out.real_part = image.real().cwiseAbs().maxCoeff();
  out.valid = out.unitarity <= tol && out.real_part <= tol;
  return out;
}

LagrangianFrame LagrangianFrame::from_basis(const RealMatrix& basis) {
  return LagrangianFrame{basis, rotation_to_vertical(basis)};
}

LagrangianFrame LagrangianFrame::with_rotation(const RealMatrix& basis, const ComplexMatrix& X) {
  const LagrangianCheck check = is_lagrangian(basis);
  if (!check.lagrangian) throw std::invalid_argument("LagrangianFrame: frame is not Lagrangian");
  const RotationCheck r = validate_rotation(basis, X);
  if (!r.valid) {
    throw std::invalid_argument("LagrangianFrame: supplied rotation does not map the plane to iR^n (unitarity " +
                                std::to_string(r.unitarity) + ", max |Re X v| " + std::to_string(r.real_part) + ")");
  }
  return LagrangianFrame{basis, X};
}

RealMatrix frame_real(std::size_t n) {
  RealMatrix B = RealMatrix::Zero(2 * static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  B.topRows(static_cast<Eigen::Index>(n)).setIdentity();
  return B;
}

RealMatrix frame_imaginary(std::size_t n) {
  RealMatrix B = RealMatrix::Zero(2 * static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  B.bottomRows(static_cast<Eigen::Index>(n)).setIdentity();
  return B;
}

RealMatrix frame_diagonal(std::size_t n) {
  RealMatrix B = RealMatrix::Zero(2 * static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  B.topRows(static_cast<Eigen::Index>(n)).setIdentity();
  B.bottomRows(static_cast<Eigen::Index>(n)).setIdentity();
  return B;
}

InvarianceReport l_invariance_test(const Measure& mu, const LagrangianFrame& frame, const BasisSet& basis,
                                   const QuadratureConfig& cfg, double berezin_tol, double commutator_tol) {
  if (mu.dim() != frame.dim() || mu.dim() != basis.dim()) {
    throw std::invalid_argument("l_invariance_test: dimension mismatch");
  }
  InvarianceReport rep;
  const Measure rotated = pushforward(mu, frame.X.adjoint());
  rep.berezin_y_variation = berezin_y_variation(rotated, {-1.0, -0.5, 0.0, 0.5, 1.0}, {-1.0, -0.5, 0.0, 0.5, 1.0}, cfg);
  const ComplexMatrix T = assemble_toeplitz(mu, basis, cfg).entries;
  const ComplexMatrix A = complex_identify(frame.basis);
  for (Eigen::Index c = 0; c < A.cols(); ++c) {
    const ComplexVector h = 0.5 * A.col(c) / A.col(c).norm();
    rep.weyl_commutator = std::max(rep.weyl_commutator, commutator_interior_norm(T, weyl_matrix(h, basis), basis));
  }
  rep.invariant = rep.berezin_y_variation <= berezin_tol && rep.weyl_commutator <= commutator_tol;
  return rep;
}

OperatorMatrix assemble_L_real_coderivative(const Measure& mu, const HalfIndex& k, const LagrangianFrame& frame,
                                            const BasisSet& basis, const QuadratureConfig& cfg) {
  return assemble_real_coderivative(pushforward(mu, frame.X.adjoint()), k, basis, cfg);
}

}  // namespace focklab
