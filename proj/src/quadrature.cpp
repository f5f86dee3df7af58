#include "focklab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace focklab {

namespace {

void check_order(int order, const char* name) {
  if (order < 1 || order > max_quadrature_order) {
    throw std::invalid_argument(std::string(name) + ": order " + std::to_string(order) +
                                " outside [1, " + std::to_string(max_quadrature_order) + "]");
  }
}

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
QuadRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0,
                      WeightKind kind) {
  const int order = static_cast<int>(diag.size());
  QuadRule rule;
  rule.order = order;
  rule.weight_kind = kind;
  if (order == 1) {
    rule.nodes = {diag(0)};
    rule.weights = {mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Golub-Welsch eigen-decomposition failed");
  }
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

// p_0..p_m orthonormal with respect to e^{-t^2}.
std::vector<double> orthonormal_hermite(int m, double x) {
  std::vector<double> p(static_cast<std::size_t>(m) + 1);
  p[0] = 1.0 / std::sqrt(sqrt_pi);
  if (m >= 1) p[1] = std::sqrt(2.0) * x * p[0];
  for (int k = 1; k < m; ++k) {
    p[k + 1] = std::sqrt(2.0 / (k + 1)) * x * p[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * p[k - 1];
  }
  return p;
}

// Exact mirror symmetry for symmetric weights: average node pairs.
void symmetrize(QuadRule& rule) {
  const int m = rule.order;
  for (int i = 0; i < m / 2; ++i) {
    const int j = m - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
}

}  // namespace

QuadRule gauss_hermite(int order) {
  check_order(order, "gauss_hermite");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd off(std::max(order - 1, 0));
  for (int i = 1; i < order; ++i) off(i - 1) = std::sqrt(0.5 * i);
  QuadRule rule = golub_welsch(diag, off, sqrt_pi, WeightKind::gaussian_folded);
  symmetrize(rule);
  // Eigenvector weights lose relative accuracy in the tails; polish the nodes
  // with Newton on the orthonormal polynomial and recompute the weights as
  // Christoffel numbers 1 / sum_k p_k(x)^2.
  for (int i = 0; i < order; ++i) {
    double x = rule.nodes[i];
    double christoffel = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      std::vector<double> p = orthonormal_hermite(order, x);
      const double dp = std::sqrt(2.0 * order) * p[order - 1];
      if (iter < 2 && dp != 0.0) x -= p[order] / dp;
      if (iter == 2) {
        christoffel = 0.0;
        for (int k = 0; k < order; ++k) christoffel += p[k] * p[k];
      }
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / christoffel;
  }
  symmetrize(rule);
  return rule;
}

QuadRule gauss_legendre(int order) {
  check_order(order, "gauss_legendre");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd off(std::max(order - 1, 0));
  for (int i = 1; i < order; ++i) off(i - 1) = i / std::sqrt(4.0 * i * i - 1.0);
  QuadRule rule = golub_welsch(diag, off, 2.0, WeightKind::raw);
  symmetrize(rule);
  return rule;
}

// ---------------------------------------------------------------------------

TensorRule::TensorRule(std::vector<QuadRule> axes) : axes_(std::move(axes)) {}

TensorRule TensorRule::gauss_hermite(std::size_t dim, int order) {
  return TensorRule(std::vector<QuadRule>(dim, focklab::gauss_hermite(order)));
}

std::size_t TensorRule::size() const {
  if (axes_.empty()) return 0;
  std::size_t total = 1;
  for (const auto& a : axes_) total *= a.nodes.size();
  return total;
}

void TensorRule::for_each(
    const std::function<void(std::span<const double>, double)>& visit) const {
  const std::size_t d = axes_.size();
  if (d == 0) return;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> point(d);
  const std::size_t total = size();
  for (std::size_t count = 0; count < total; ++count) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      point[j] = axes_[j].nodes[idx[j]];
      w *= axes_[j].weights[idx[j]];
    }
    visit(point, w);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < axes_[j].nodes.size()) break;
      idx[j] = 0;
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

std::string format_node(std::span<const double> node) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < node.size(); ++j) {
    if (j) os << ", ";
    os << node[j];
  }
  os << ')';
  return os.str();
}

}  // namespace

NonFiniteIntegrand::NonFiniteIntegrand(std::vector<double> node, const std::string& context)
    : std::runtime_error(context + ": non-finite integrand at node " + format_node(node)),
      node_(std::move(node)) {}

cplx integrate_gaussian(const RealIntegrand& f, const TensorRule& rule) {
  cplx sum = 0.0;
  rule.for_each([&](std::span<const double> t, double w) {
    const cplx v = f(t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFiniteIntegrand(std::vector<double>(t.begin(), t.end()), "integrate_gaussian");
    }
    sum += w * v;
  });
  return sum;
}

cplx integrate_gaussian_window(const RealIntegrand& f, double a, std::span<const double> center,
                               int order) {
  if (!(a > 0.0)) throw std::invalid_argument("integrate_gaussian_window: width must be positive");
  const std::size_t d = center.size();
  const double scale = 1.0 / std::sqrt(a);
  const TensorRule rule = TensorRule::gauss_hermite(d, order);
  std::vector<double> shifted(d);
  const cplx s = integrate_gaussian(
      [&](std::span<const double> t) {
        for (std::size_t j = 0; j < d; ++j) shifted[j] = center[j] + scale * t[j];
        return f(shifted);
      },
      rule);
  return s * std::pow(scale, static_cast<double>(d));
}

}  // namespace focklab
