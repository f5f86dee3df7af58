#pragma once

#include <vector>

#include "focklab/toeplitz.hpp"

namespace focklab {

/// Columns of a 2n x n real matrix span a plane in R^{2n} = (x, y); a column
/// (v_x, v_y) is identified with v_x + i v_y in C^n.
ComplexMatrix complex_identify(const RealMatrix& basis);

/// omega_0(u, v) = J u . v = u_y . v_x - u_x . v_y, J = [[0, I], [-I, 0]].
double symplectic_form(const RealVector& u, const RealVector& v);

struct LagrangianCheck {
  bool lagrangian = false;
  double max_violation = 0.0;  ///< max |omega_0(b_i, b_j)|
  int rank = 0;
};

/// Throws std::invalid_argument unless basis is 2n x n with n >= 1.
LagrangianCheck is_lagrangian(const RealMatrix& basis, double tol = 1e-12);

/// X = i (A^* A)^{-1/2} A^* for A = complex_identify(basis). On a Lagrangian
/// plane A^*A is real, so X A = i (A^*A)^{1/2} lies in i R^{n x n}.
/// Throws std::invalid_argument for non-Lagrangian or degenerate frames.
ComplexMatrix rotation_to_vertical(const RealMatrix& basis);

struct RotationCheck {
  double unitarity = 0.0;  ///< max |X^*X - I|
  double real_part = 0.0;  ///< max |Re(X v)| over the identified basis columns
  bool valid = false;
};

RotationCheck validate_rotation(const RealMatrix& basis, const ComplexMatrix& X, double tol = 1e-12);

struct LagrangianFrame {
  RealMatrix basis;
  ComplexMatrix X;

  /// Validates the plane and caches rotation_to_vertical.
  static LagrangianFrame from_basis(const RealMatrix& basis);
  /// Uses a supplied rotation; throws unless it validates.
  static LagrangianFrame with_rotation(const RealMatrix& basis, const ComplexMatrix& X);
  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

/// Standard frames: L_x = R^n x {0}, i R^n = {0} x R^n, and the diagonal {(x, x)}.
RealMatrix frame_real(std::size_t n);
RealMatrix frame_imaginary(std::size_t n);
RealMatrix frame_diagonal(std::size_t n);

struct InvarianceReport {
  double berezin_y_variation = 0.0;  ///< of mu_{X^*}
  double weyl_commutator = 0.0;      ///< max over sampled h in L of ||[T_mu, W_h]||_interior
  bool invariant = false;
};

/// Checks that mu_{X^*} is horizontal and that T_mu commutes with W_h for
/// h = 0.5 * (identified basis column).
InvarianceReport l_invariance_test(const Measure& mu, const LagrangianFrame& frame, const BasisSet& basis,
                                   const QuadratureConfig& cfg = {}, double berezin_tol = 1e-8,
                                   double commutator_tol = 1e-5);

/// assemble_real_coderivative(mu_{X^*}, k).
OperatorMatrix assemble_L_real_coderivative(const Measure& mu, const HalfIndex& k, const LagrangianFrame& frame,
                                            const BasisSet& basis, const QuadratureConfig& cfg = {});

}  // namespace focklab
