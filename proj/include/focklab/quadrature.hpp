#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

enum class WeightKind {
  gaussian_folded,  ///< integrates f(t) e^{-t^2}; weights already carry e^{-t^2}
  raw,              ///< integrates f(t) on the rule's interval
};

struct QuadRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
  int order = 0;
  WeightKind weight_kind = WeightKind::raw;
};

inline constexpr int max_quadrature_order = 200;

/// Gauss-Hermite rule for \int f(t) e^{-t^2} dt, exact for polynomials of
/// degree <= 2*order - 1. Nodes and weights come from the eigen-decomposition
/// of the symmetric Jacobi matrix (Golub-Welsch).
QuadRule gauss_hermite(int order);

/// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int order);

/// Tensor product of one-dimensional rules.
class TensorRule {
 public:
  TensorRule() = default;
  explicit TensorRule(std::vector<QuadRule> axes);
  static TensorRule gauss_hermite(std::size_t dim, int order);

  std::size_t dim() const { return axes_.size(); }
  const std::vector<QuadRule>& axes() const { return axes_; }
  std::size_t size() const;

  /// Visits every tensor node in row-major order (last axis fastest).
  void for_each(const std::function<void(std::span<const double> point, double weight)>& visit) const;

 private:
  std::vector<QuadRule> axes_;
};

/// Raised when an integrand is NaN or infinite at a quadrature node.
class NonFiniteIntegrand : public std::runtime_error {
 public:
  NonFiniteIntegrand(std::vector<double> node, const std::string& context);
  const std::vector<double>& node() const { return node_; }

 private:
  std::vector<double> node_;
};

using RealIntegrand = std::function<cplx(std::span<const double>)>;

/// sum_i w_i f(t_i) over the tensor rule. With folded Hermite axes this is
/// \int f(t) e^{-|t|^2} dt.
cplx integrate_gaussian(const RealIntegrand& f, const TensorRule& rule);

/// \int f(t) e^{-a |t - c|^2} dt over R^d, by recentering and rescaling onto
/// the e^{-t^2} weight.
cplx integrate_gaussian_window(const RealIntegrand& f, double a, std::span<const double> center,
                               int order);

}  // namespace focklab
