#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace focklab {

using cplx = std::complex<double>;

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_pi = 1.7724538509055160273;  // sqrt(pi)

}  // namespace focklab
