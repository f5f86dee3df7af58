#include "focklab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "focklab/quadrature.hpp"

namespace focklab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using PointFn = std::function<cplx(std::span<const cplx>)>;

ComplexVector to_vector(std::span<const cplx> w) {
  ComplexVector v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) v(static_cast<Eigen::Index>(j)) = w[j];
  return v;
}

RealVector to_vector(std::span<const double> t) {
  RealVector v(static_cast<Eigen::Index>(t.size()));
  for (std::size_t j = 0; j < t.size(); ++j) v(static_cast<Eigen::Index>(j)) = t[j];
  return v;
}

void require_dim(std::size_t expected, Eigen::Index got, const char* what) {
  if (static_cast<std::size_t>(got) != expected) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " + std::to_string(expected) +
                                ", got " + std::to_string(got));
  }
}

void require_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite weight");
  }
}

// Cached Gauss-Hermite rules; the orders used are few and reused heavily.
const QuadRule& hermite_rule(int order) {
  thread_local std::vector<std::unique_ptr<QuadRule>> cache(max_quadrature_order + 1);
  if (order < 1 || order > max_quadrature_order) return *(cache[0] = std::make_unique<QuadRule>(gauss_hermite(order)));
  auto& slot = cache[static_cast<std::size_t>(order)];
  if (!slot) slot = std::make_unique<QuadRule>(gauss_hermite(order));
  return *slot;
}

const QuadRule& legendre_rule(int order) {
  thread_local std::vector<std::unique_ptr<QuadRule>> cache(max_quadrature_order + 1);
  if (order < 1 || order > max_quadrature_order) return *(cache[0] = std::make_unique<QuadRule>(gauss_legendre(order)));
  auto& slot = cache[static_cast<std::size_t>(order)];
  if (!slot) slot = std::make_unique<QuadRule>(gauss_legendre(order));
  return *slot;
}

// Visits the tensor Gauss-Hermite grid of dimension d for the weight
// e^{-a |t - c|^2}: point c + t/sqrt(a), weight prod w_i * a^{-d/2}.
template <class Visit>
void hermite_grid(std::size_t d, int order, double a, std::span<const double> center, Visit&& visit) {
  const QuadRule& rule = hermite_rule(order);
  const double s = 1.0 / std::sqrt(a);
  const double scale = std::pow(s, static_cast<double>(d));
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> point(d);
  const std::size_t m = rule.nodes.size();
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= m;
  for (std::size_t count = 0; count < total; ++count) {
    double w = scale;
    for (std::size_t j = 0; j < d; ++j) {
      point[j] = center[j] + s * rule.nodes[idx[j]];
      w *= rule.weights[idx[j]];
    }
    visit(std::span<const double>(point), w);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < m) break;
      idx[j] = 0;
    }
  }
}

// Combine the window e^{-a|t-c|^2} with an envelope e^{-|t-e|^2/sigma^2}:
// the product equals e^{-K} e^{-A |t - c'|^2}.
struct CombinedGaussian {
  double A;
  std::vector<double> center;
  double log_factor;  // -K
};

CombinedGaussian combine(double a, std::span<const double> c, std::span<const double> e, double sigma) {
  const double b = 1.0 / (sigma * sigma);
  CombinedGaussian g;
  g.A = a + b;
  g.center.resize(c.size());
  double k = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    g.center[j] = (a * c[j] + b * e[j]) / g.A;
    // a (c - c')^2 + b (e - c')^2 is the constant left over per coordinate
    k += a * (c[j] - g.center[j]) * (c[j] - g.center[j]) + b * (e[j] - g.center[j]) * (e[j] - g.center[j]);
  }
  g.log_factor = -k;
  return g;
}

double envelope_exponent(std::span<const double> t, std::span<const double> e, double sigma) {
  double s = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) s += (t[j] - e[j]) * (t[j] - e[j]);
  return s / (sigma * sigma);
}

// Real coordinates (x_1..x_n, y_1..y_n) of a complex point.
std::vector<double> real_coords(const ComplexVector& z) {
  const auto n = static_cast<std::size_t>(z.size());
  std::vector<double> r(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    r[j] = z(static_cast<Eigen::Index>(j)).real();
    r[n + j] = z(static_cast<Eigen::Index>(j)).imag();
  }
  return r;
}

double alpha_weight(const std::vector<int>& alpha, std::span<const double> y) {
  double out = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] != 0) out *= std::pow(1.0 + y[j] * y[j], -alpha[j]);
  }
  return out;
}

std::string format_complex(cplx v) {
  std::ostringstream os;
  if (v.imag() == 0.0) {
    os << v.real();
  } else {
    os << '(' << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// RealMeasure

RealMeasure RealMeasure::atoms(std::vector<RealVector> points, std::vector<cplx> weights) {
  if (points.empty()) throw std::invalid_argument("RealMeasure::atoms: no atoms");
  if (points.size() != weights.size()) throw std::invalid_argument("RealMeasure::atoms: points/weights size mismatch");
  const std::size_t n = static_cast<std::size_t>(points.front().size());
  if (n == 0) throw std::invalid_argument("RealMeasure::atoms: zero-dimensional point");
  for (const auto& p : points) require_dim(n, p.size(), "RealMeasure::atoms");
  for (cplx w : weights) require_finite(w, "RealMeasure::atoms");
  return RealMeasure(n, Atoms{std::move(points), std::move(weights)});
}

RealMeasure RealMeasure::dirac(const RealVector& point, cplx weight) {
  return atoms({point}, {weight});
}

RealMeasure RealMeasure::lebesgue(std::size_t n) {
  if (n == 0) throw std::invalid_argument("RealMeasure::lebesgue: dimension must be >= 1");
  return RealMeasure(n, Lebesgue{});
}

RealMeasure RealMeasure::gaussian(std::size_t n, double sigma, std::optional<RealVector> center) {
  if (!(sigma > 0.0)) throw std::invalid_argument("RealMeasure::gaussian: sigma must be positive");
  RealVector c = center.value_or(RealVector::Zero(static_cast<Eigen::Index>(n)));
  require_dim(n, c.size(), "RealMeasure::gaussian");
  GaussianEnvelope env{c.cast<cplx>(), sigma};
  auto f = [c, sigma](const RealVector& t) -> cplx { return std::exp(-(t - c).squaredNorm() / (sigma * sigma)); };
  std::ostringstream label;
  label << "gaussian(" << sigma << ")";
  return density(n, f, env, label.str());
}

RealMeasure RealMeasure::density(std::size_t n, std::function<cplx(const RealVector&)> f,
                                 std::optional<GaussianEnvelope> envelope, std::string label) {
  if (n == 0) throw std::invalid_argument("RealMeasure::density: dimension must be >= 1");
  if (!f) throw std::invalid_argument("RealMeasure::density: empty density function");
  if (envelope) {
    require_dim(n, envelope->center.size(), "RealMeasure::density envelope");
    if (!(envelope->sigma > 0.0)) throw std::invalid_argument("RealMeasure::density: envelope sigma must be positive");
  }
  return RealMeasure(n, Density{std::move(f), std::move(envelope), std::move(label)});
}

RealMeasure RealMeasure::variation() const {
  return std::visit(overloaded{
                        [&](const Atoms& a) {
                          std::vector<cplx> w(a.weights.size());
                          std::transform(a.weights.begin(), a.weights.end(), w.begin(),
                                         [](cplx v) { return cplx(std::abs(v), 0.0); });
                          return RealMeasure(dim_, Atoms{a.points, std::move(w)});
                        },
                        [&](const Lebesgue&) { return *this; },
                        [&](const Density& d) {
                          auto f = d.f;
                          return RealMeasure(dim_, Density{[f](const RealVector& t) -> cplx { return std::abs(f(t)); },
                                                           d.envelope, "|" + d.label + "|"});
                        },
                    },
                    kind_);
}

RealMeasure RealMeasure::operator+(const RealMeasure& other) const {
  const auto* a = std::get_if<Atoms>(&kind_);
  const auto* b = std::get_if<Atoms>(&other.kind_);
  if (!a || !b) throw std::invalid_argument("RealMeasure::operator+: only atomic measures can be added");
  if (dim_ != other.dim_) throw std::invalid_argument("RealMeasure::operator+: dimension mismatch");
  Atoms sum = *a;
  sum.points.insert(sum.points.end(), b->points.begin(), b->points.end());
  sum.weights.insert(sum.weights.end(), b->weights.begin(), b->weights.end());
  return RealMeasure(dim_, std::move(sum));
}

std::string RealMeasure::describe() const {
  return std::visit(overloaded{
                        [&](const Atoms& a) {
                          std::ostringstream os;
                          os << "atoms[";
                          for (std::size_t i = 0; i < a.points.size(); ++i) {
                            if (i) os << "; ";
                            os << format_complex(a.weights[i]) << "@(";
                            for (Eigen::Index j = 0; j < a.points[i].size(); ++j) {
                              if (j) os << ',';
                              os << a.points[i](j);
                            }
                            os << ')';
                          }
                          os << ']';
                          return os.str();
                        },
                        [&](const Lebesgue&) { return std::string("lebesgue"); },
                        [&](const Density& d) { return d.label; },
                    },
                    kind_);
}

// ---------------------------------------------------------------------------
// Measure

Measure Measure::atoms(std::vector<ComplexVector> points, std::vector<cplx> weights) {
  if (points.empty()) throw std::invalid_argument("Measure::atoms: no atoms");
  if (points.size() != weights.size()) throw std::invalid_argument("Measure::atoms: points/weights size mismatch");
  const std::size_t n = static_cast<std::size_t>(points.front().size());
  if (n == 0) throw std::invalid_argument("Measure::atoms: zero-dimensional point");
  for (const auto& p : points) require_dim(n, p.size(), "Measure::atoms");
  for (cplx w : weights) require_finite(w, "Measure::atoms");
  return Measure(n, Atoms{std::move(points), std::move(weights)});
}

Measure Measure::dirac(const ComplexVector& point, cplx weight) { return atoms({point}, {weight}); }

Measure Measure::lebesgue(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Measure::lebesgue: dimension must be >= 1");
  return Measure(n, Lebesgue{});
}

Measure Measure::gaussian(std::size_t n, double sigma, std::optional<ComplexVector> center) {
  if (!(sigma > 0.0)) throw std::invalid_argument("Measure::gaussian: sigma must be positive");
  ComplexVector c = center.value_or(ComplexVector::Zero(static_cast<Eigen::Index>(n)));
  require_dim(n, c.size(), "Measure::gaussian");
  auto f = [c, sigma](const ComplexVector& w) -> cplx { return std::exp(-(w - c).squaredNorm() / (sigma * sigma)); };
  std::ostringstream label;
  label << "gaussian(" << sigma << ")";
  return density(n, f, GaussianEnvelope{c, sigma}, label.str());
}

Measure Measure::density(std::size_t n, std::function<cplx(const ComplexVector&)> f,
                         std::optional<GaussianEnvelope> envelope, std::string label) {
  if (n == 0) throw std::invalid_argument("Measure::density: dimension must be >= 1");
  if (!f) throw std::invalid_argument("Measure::density: empty density function");
  if (envelope) {
    require_dim(n, envelope->center.size(), "Measure::density envelope");
    if (!(envelope->sigma > 0.0)) throw std::invalid_argument("Measure::density: envelope sigma must be positive");
  }
  return Measure(n, Density{std::move(f), std::move(envelope), std::move(label)});
}

Measure Measure::horizontal(RealMeasure rho) {
  const std::size_t n = rho.dim();
  return Measure(n, Horizontal{std::move(rho)});
}

Measure Measure::alpha_horizontal(RealMeasure rho, std::vector<int> alpha) {
  const std::size_t n = rho.dim();
  if (alpha.size() != n) throw std::invalid_argument("Measure::alpha_horizontal: alpha has wrong dimension");
  if (std::all_of(alpha.begin(), alpha.end(), [](int a) { return a == 0; })) {
    return Measure(n, Horizontal{std::move(rho)});
  }
  return Measure(n, AlphaHorizontal{std::move(rho), std::move(alpha)});
}

std::string Measure::describe() const {
  return std::visit(overloaded{
                        [&](const Atoms& a) {
                          std::ostringstream os;
                          os << "atoms[";
                          for (std::size_t i = 0; i < a.points.size(); ++i) {
                            if (i) os << "; ";
                            os << format_complex(a.weights[i]) << "@(";
                            for (Eigen::Index j = 0; j < a.points[i].size(); ++j) {
                              if (j) os << ',';
                              os << format_complex(a.points[i](j));
                            }
                            os << ')';
                          }
                          os << ']';
                          return os.str();
                        },
                        [&](const Lebesgue&) { return std::string("lebesgue"); },
                        [&](const Density& d) { return d.label; },
                        [&](const Horizontal& h) { return "horizontal(" + h.rho.describe() + ")"; },
                        [&](const AlphaHorizontal& h) {
                          std::ostringstream os;
                          os << "alpha_horizontal(" << h.rho.describe() << ", (";
                          for (std::size_t j = 0; j < h.alpha.size(); ++j) os << (j ? "," : "") << h.alpha[j];
                          os << "))";
                          return os.str();
                        },
                        [&](const Pushforward& p) { return "pushforward(" + p.base->describe() + ", X)"; },
                        [&](const Weighted& w) { return "weight(" + w.base->describe() + ", " + w.p.str() + ")"; },
                    },
                    kind_);
}

bool is_unitary(const ComplexMatrix& X, double tol) {
  if (X.rows() != X.cols()) return false;
  const ComplexMatrix g = X.adjoint() * X - ComplexMatrix::Identity(X.rows(), X.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

Measure weight(const Measure& mu, const WeightExponent& p) {
  if (p.dim() != mu.dim()) throw std::invalid_argument("weight: exponent dimension mismatch");
  if (p.is_zero()) return mu;
  if (const auto* w = mu.as<Measure::Weighted>()) {
    const WeightExponent q = w->p + p;
    if (q.is_zero()) return *w->base;
    return Measure(mu.dim(), Measure::Weighted{w->base, q});
  }
  return Measure(mu.dim(), Measure::Weighted{std::make_shared<const Measure>(mu), p});
}

Measure pushforward(const Measure& mu, const ComplexMatrix& X) {
  require_dim(mu.dim(), X.rows(), "pushforward");
  if (!is_unitary(X)) throw std::invalid_argument("pushforward: matrix is not unitary (X^* X != I to 1e-12)");
  const auto n = static_cast<Eigen::Index>(mu.dim());
  const auto near_identity = [&](const ComplexMatrix& M) {
    return (M - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12;
  };
  if (near_identity(X)) return mu;
  if (const auto* p = mu.as<Measure::Pushforward>()) {
    // (mu_Y)_X = mu_{Y X}
    ComplexMatrix YX = p->X * X;
    if (near_identity(YX)) return *p->base;
    return Measure(mu.dim(), Measure::Pushforward{p->base, std::move(YX)});
  }
  return Measure(mu.dim(), Measure::Pushforward{std::make_shared<const Measure>(mu), X});
}

Measure variation(const Measure& mu) {
  const std::size_t n = mu.dim();
  return std::visit(overloaded{
                        [&](const Measure::Atoms& a) {
                          std::vector<cplx> w(a.weights.size());
                          std::transform(a.weights.begin(), a.weights.end(), w.begin(),
                                         [](cplx v) { return cplx(std::abs(v), 0.0); });
                          return Measure(n, Measure::Atoms{a.points, std::move(w)});
                        },
                        [&](const Measure::Lebesgue&) { return mu; },
                        [&](const Measure::Density& d) {
                          auto f = d.f;
                          return Measure(n, Measure::Density{[f](const ComplexVector& w) -> cplx { return std::abs(f(w)); },
                                                             d.envelope, "|" + d.label + "|"});
                        },
                        [&](const Measure::Horizontal& h) { return Measure(n, Measure::Horizontal{h.rho.variation()}); },
                        [&](const Measure::AlphaHorizontal& h) {
                          return Measure(n, Measure::AlphaHorizontal{h.rho.variation(), h.alpha});
                        },
                        [&](const Measure::Pushforward& p) {
                          return Measure(n, Measure::Pushforward{std::make_shared<const Measure>(variation(*p.base)), p.X});
                        },
                        [&](const Measure::Weighted& w) {
                          return Measure(n, Measure::Weighted{std::make_shared<const Measure>(variation(*w.base)), w.p});
                        },
                    },
                    mu.kind());
}

namespace {

bool is_real_value(cplx v) { return std::abs(v.imag()) <= 1e-14 * std::max(1.0, std::abs(v.real())); }

bool is_real_measure(const RealMeasure& rho) {
  return std::visit(overloaded{
                        [](const RealMeasure::Atoms& a) {
                          return std::all_of(a.weights.begin(), a.weights.end(), is_real_value);
                        },
                        [](const RealMeasure::Lebesgue&) { return true; },
                        [&](const RealMeasure::Density& d) {
                          for (double s : {-1.3, 0.0, 0.7, 2.1}) {
                            if (!is_real_value(d.f(RealVector::Constant(static_cast<Eigen::Index>(rho.dim()), s)))) return false;
                          }
                          return true;
                        },
                    },
                    rho.kind());
}

}  // namespace

bool is_real_measure(const Measure& mu) {
  const auto n = static_cast<Eigen::Index>(mu.dim());
  return std::visit(overloaded{
                        [](const Measure::Atoms& a) {
                          return std::all_of(a.weights.begin(), a.weights.end(), is_real_value);
                        },
                        [](const Measure::Lebesgue&) { return true; },
                        [&](const Measure::Density& d) {
                          for (cplx s : {cplx(-1.3, 0.4), cplx(0.0, 0.0), cplx(0.7, -1.1), cplx(2.1, 0.3)}) {
                            if (!is_real_value(d.f(ComplexVector::Constant(n, s)))) return false;
                          }
                          return true;
                        },
                        [](const Measure::Horizontal& h) { return is_real_measure(h.rho); },
                        [](const Measure::AlphaHorizontal& h) { return is_real_measure(h.rho); },
                        [](const Measure::Pushforward& p) { return is_real_measure(*p.base); },
                        [](const Measure::Weighted& w) { return is_real_measure(*w.base); },
                    },
                    mu.kind());
}

double weight_function(const WeightExponent& p, std::span<const cplx> w) {
  double out = 1.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const int d = p.doubled()[j];
    if (d == 0) continue;
    const double base = (1.0 + w[j].real() * w[j].real()) * (1.0 + w[j].imag() * w[j].imag());
    out *= (d % 2 == 0) ? std::pow(base, d / 2) : std::pow(base, 0.5 * d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discretization

RealNodeCloud discretize(const RealMeasure& rho, double a, const RealVector& center, int order) {
  if (!(a > 0.0)) throw std::invalid_argument("discretize: window width must be positive");
  const std::size_t n = rho.dim();
  require_dim(n, center.size(), "discretize(RealMeasure)");
  RealNodeCloud cloud;
  cloud.dim = n;
  const std::span<const double> c(center.data(), n);
  auto push = [&](std::span<const double> t, cplx w) {
    cloud.points.insert(cloud.points.end(), t.begin(), t.end());
    cloud.weights.push_back(w);
  };
  std::visit(overloaded{
                 [&](const RealMeasure::Atoms& at) {
                   for (std::size_t i = 0; i < at.points.size(); ++i) {
                     const double d2 = (at.points[i] - center).squaredNorm();
                     push({at.points[i].data(), n}, at.weights[i] * std::exp(-a * d2));
                   }
                 },
                 [&](const RealMeasure::Lebesgue&) { hermite_grid(n, order, a, c, [&](auto t, double w) { push(t, w); }); },
                 [&](const RealMeasure::Density& d) {
                   RealVector tv(static_cast<Eigen::Index>(n));
                   if (d.envelope) {
                     const RealVector e = d.envelope->center.real();
                     const std::span<const double> es(e.data(), n);
                     const CombinedGaussian g = combine(a, c, es, d.envelope->sigma);
                     hermite_grid(n, order, g.A, g.center, [&](std::span<const double> t, double w) {
                       for (std::size_t j = 0; j < n; ++j) tv(static_cast<Eigen::Index>(j)) = t[j];
                       // q = f / envelope, folded into a single exponential
                       const cplx q = d.f(tv) * std::exp(envelope_exponent(t, es, d.envelope->sigma) + g.log_factor);
                       push(t, w * q);
                     });
                   } else {
                     hermite_grid(n, order, a, c, [&](std::span<const double> t, double w) {
                       for (std::size_t j = 0; j < n; ++j) tv(static_cast<Eigen::Index>(j)) = t[j];
                       push(t, w * d.f(tv));
                     });
                   }
                 },
             },
             rho.kind());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const cplx w = cloud.weights[i];
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      auto p = cloud.point(i);
      throw NonFiniteIntegrand(std::vector<double>(p.begin(), p.end()), "discretize(" + rho.describe() + ")");
    }
  }
  return cloud;
}

NodeCloud discretize(const Measure& mu, double a, const ComplexVector& center, const QuadratureConfig& cfg) {
  if (!(a > 0.0)) throw std::invalid_argument("discretize: window width must be positive");
  const std::size_t n = mu.dim();
  require_dim(n, center.size(), "discretize(Measure)");
  NodeCloud cloud;
  cloud.dim = n;
  auto push_real = [&](std::span<const double> xy, cplx w) {
    for (std::size_t j = 0; j < n; ++j) cloud.points.emplace_back(xy[j], xy[n + j]);
    cloud.weights.push_back(w);
  };
  const int order = cfg.moment_order;

  std::visit(
      overloaded{
          [&](const Measure::Atoms& at) {
            for (std::size_t i = 0; i < at.points.size(); ++i) {
              const double d2 = (at.points[i] - center).squaredNorm();
              for (std::size_t j = 0; j < n; ++j) cloud.points.push_back(at.points[i](static_cast<Eigen::Index>(j)));
              cloud.weights.push_back(at.weights[i] * std::exp(-a * d2));
            }
          },
          [&](const Measure::Lebesgue&) {
            const std::vector<double> c = real_coords(center);
            hermite_grid(2 * n, order, a, c, [&](auto xy, double w) { push_real(xy, w); });
          },
          [&](const Measure::Density& d) {
            const std::vector<double> c = real_coords(center);
            ComplexVector wv(static_cast<Eigen::Index>(n));
            auto fill = [&](std::span<const double> xy) {
              for (std::size_t j = 0; j < n; ++j) wv(static_cast<Eigen::Index>(j)) = cplx(xy[j], xy[n + j]);
            };
            if (d.envelope) {
              const std::vector<double> e = real_coords(d.envelope->center);
              const CombinedGaussian g = combine(a, c, e, d.envelope->sigma);
              hermite_grid(2 * n, order, g.A, g.center, [&](std::span<const double> xy, double w) {
                fill(xy);
                const cplx q = d.f(wv) * std::exp(envelope_exponent(xy, e, d.envelope->sigma) + g.log_factor);
                push_real(xy, w * q);
              });
            } else {
              hermite_grid(2 * n, order, a, c, [&](std::span<const double> xy, double w) {
                fill(xy);
                push_real(xy, w * d.f(wv));
              });
            }
          },
          [&](const auto& h) -> std::enable_if_t<std::is_same_v<std::decay_t<decltype(h)>, Measure::Horizontal> ||
                                                    std::is_same_v<std::decay_t<decltype(h)>, Measure::AlphaHorizontal>> {
            using H = std::decay_t<decltype(h)>;
            const RealNodeCloud t_cloud = discretize(h.rho, a, RealVector(center.real()), order);
            std::vector<double> v_points;
            std::vector<double> v_weights;
            const RealVector ci = center.imag();
            hermite_grid(n, order, a, std::span<const double>(ci.data(), n), [&](std::span<const double> v, double w) {
              double vw = w;
              if constexpr (std::is_same_v<H, Measure::AlphaHorizontal>) vw *= alpha_weight(h.alpha, v);
              v_points.insert(v_points.end(), v.begin(), v.end());
              v_weights.push_back(vw);
            });
            for (std::size_t i = 0; i < t_cloud.size(); ++i) {
              const auto t = t_cloud.point(i);
              for (std::size_t k = 0; k < v_weights.size(); ++k) {
                for (std::size_t j = 0; j < n; ++j) cloud.points.emplace_back(t[j], v_points[k * n + j]);
                cloud.weights.push_back(t_cloud.weights[i] * v_weights[k]);
              }
            }
          },
          [&](const Measure::Pushforward& p) {
            const ComplexVector shifted = p.X * center;
            NodeCloud base = discretize(*p.base, a, shifted, cfg);
            const ComplexMatrix Xs = p.X.adjoint();
            ComplexVector w(static_cast<Eigen::Index>(n));
            for (std::size_t i = 0; i < base.size(); ++i) {
              for (std::size_t j = 0; j < n; ++j) w(static_cast<Eigen::Index>(j)) = base.points[i * n + j];
              const ComplexVector m = Xs * w;
              for (std::size_t j = 0; j < n; ++j) base.points[i * n + j] = m(static_cast<Eigen::Index>(j));
            }
            cloud = std::move(base);
          },
          [&](const Measure::Weighted& wt) {
            NodeCloud base = discretize(*wt.base, a, center, cfg);
            for (std::size_t i = 0; i < base.size(); ++i) base.weights[i] *= weight_function(wt.p, base.point(i));
            cloud = std::move(base);
          },
      },
      mu.kind());

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const cplx w = cloud.weights[i];
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      std::vector<double> node;
      for (cplx z : cloud.point(i)) {
        node.push_back(z.real());
        node.push_back(z.imag());
      }
      throw NonFiniteIntegrand(std::move(node), "discretize(" + mu.describe() + ")");
    }
  }
  return cloud;
}

cplx gaussian_integral(const Measure& mu, const std::function<cplx(std::span<const cplx>)>& g, double a,
                       const ComplexVector& center, const QuadratureConfig& cfg) {
  const NodeCloud cloud = discretize(mu, a, center, cfg);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) sum += cloud.weights[i] * g(cloud.point(i));
  return sum;
}

cplx gaussian_integral(const RealMeasure& rho, const std::function<cplx(std::span<const double>)>& g, double a,
                       const RealVector& center, int order) {
  const RealNodeCloud cloud = discretize(rho, a, center, order);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) sum += cloud.weights[i] * g(cloud.point(i));
  return sum;
}

// ---------------------------------------------------------------------------
// Moments

std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, int max_degree) {
  if (n == 0) throw std::invalid_argument("enumerate_multi_indices: n must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("enumerate_multi_indices: negative degree");
  std::vector<MultiIndex> out;
  std::vector<int> e(n, 0);
  for (int deg = 0; deg <= max_degree; ++deg) {
    // all compositions of deg into n parts, lexicographically ascending
    std::vector<std::vector<int>> level;
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int remaining) {
      if (j + 1 == n) {
        e[j] = remaining;
        level.push_back(e);
        return;
      }
      for (int v = 0; v <= remaining; ++v) {
        e[j] = v;
        rec(j + 1, remaining - v);
      }
    };
    rec(0, deg);
    for (auto& v : level) out.emplace_back(std::move(v));
  }
  return out;
}

std::size_t MomentTable::position(const MultiIndex& alpha) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), alpha, graded_less);
  if (it == indices.end() || *it != alpha) {
    throw std::out_of_range("MomentTable: index " + alpha.str() + " outside the table");
  }
  return static_cast<std::size_t>(it - indices.begin());
}

MomentTable moment_table(const Measure& mu, int max_degree, const QuadratureConfig& cfg) {
  const std::size_t n = mu.dim();
  MomentTable table;
  table.indices = enumerate_multi_indices(n, max_degree);
  const auto N = static_cast<Eigen::Index>(table.indices.size());
  table.values = ComplexMatrix::Zero(N, N);

  if (mu.as<Measure::Lebesgue>()) {
    // \int w^a conj(w)^b e^{-|w|^2} d nu = pi^n a! delta_{ab}
    for (Eigen::Index i = 0; i < N; ++i) {
      table.values(i, i) = std::pow(pi, static_cast<double>(n)) * factorial_real(table.indices[static_cast<std::size_t>(i)]);
    }
    return table;
  }

  const NodeCloud cloud = discretize(mu, 1.0, ComplexVector::Zero(static_cast<Eigen::Index>(n)), cfg);
  const std::size_t count = cloud.size();
  constexpr std::size_t chunk = 2048;
  std::vector<std::vector<cplx>> powers(n, std::vector<cplx>(static_cast<std::size_t>(max_degree) + 1));
  for (std::size_t start = 0; start < count; start += chunk) {
    const std::size_t stop = std::min(count, start + chunk);
    const auto rows = static_cast<Eigen::Index>(stop - start);
    ComplexMatrix P(rows, N);
    Eigen::VectorXcd c(rows);
    for (std::size_t i = start; i < stop; ++i) {
      const auto w = cloud.point(i);
      for (std::size_t j = 0; j < n; ++j) {
        powers[j][0] = 1.0;
        for (int d = 1; d <= max_degree; ++d) powers[j][static_cast<std::size_t>(d)] = powers[j][static_cast<std::size_t>(d) - 1] * w[j];
      }
      const auto r = static_cast<Eigen::Index>(i - start);
      for (Eigen::Index col = 0; col < N; ++col) {
        const MultiIndex& alpha = table.indices[static_cast<std::size_t>(col)];
        cplx v = 1.0;
        for (std::size_t j = 0; j < n; ++j) v *= powers[j][static_cast<std::size_t>(alpha[j])];
        P(r, col) = v;
      }
      c(r) = cloud.weights[i];
    }
    // values(a, b) += sum_i c_i w_i^a conj(w_i^b)
    table.values.noalias() += P.transpose() * (c.asDiagonal() * P.conjugate());
  }
  return table;
}

cplx moment(const Measure& mu, const MultiIndex& alpha, const MultiIndex& beta, const QuadratureConfig& cfg) {
  if (alpha.dim() != mu.dim() || beta.dim() != mu.dim()) throw std::invalid_argument("moment: index dimension mismatch");
  if (mu.as<Measure::Lebesgue>()) {
    return alpha == beta ? std::pow(pi, static_cast<double>(mu.dim())) * factorial_real(alpha) : 0.0;
  }
  const std::size_t n = mu.dim();
  return gaussian_integral(
      mu,
      [&](std::span<const cplx> w) {
        cplx v = 1.0;
        for (std::size_t j = 0; j < n; ++j) v *= std::pow(w[j], alpha[j]) * std::pow(std::conj(w[j]), beta[j]);
        return v;
      },
      1.0, ComplexVector::Zero(static_cast<Eigen::Index>(n)), cfg);
}

// ---------------------------------------------------------------------------
// Polydisk masses

namespace {

std::optional<PointFn> ac_density(const Measure& mu);

std::optional<std::function<cplx(std::span<const double>)>> ac_density(const RealMeasure& rho) {
  if (std::holds_alternative<RealMeasure::Lebesgue>(rho.kind())) {
    return [](std::span<const double>) -> cplx { return 1.0; };
  }
  if (const auto* d = std::get_if<RealMeasure::Density>(&rho.kind())) {
    auto f = d->f;
    return [f](std::span<const double> t) -> cplx { return f(to_vector(t)); };
  }
  return std::nullopt;
}

std::optional<PointFn> ac_density(const Measure& mu) {
  const std::size_t n = mu.dim();
  return std::visit(
      overloaded{
          [](const Measure::Atoms&) -> std::optional<PointFn> { return std::nullopt; },
          [](const Measure::Lebesgue&) -> std::optional<PointFn> { return PointFn([](std::span<const cplx>) -> cplx { return 1.0; }); },
          [](const Measure::Density& d) -> std::optional<PointFn> {
            auto f = d.f;
            return PointFn([f](std::span<const cplx> w) { return f(to_vector(w)); });
          },
          [n](const Measure::Horizontal& h) -> std::optional<PointFn> {
            auto r = ac_density(h.rho);
            if (!r) return std::nullopt;
            return PointFn([r = *r, n](std::span<const cplx> w) {
              std::vector<double> x(n);
              for (std::size_t j = 0; j < n; ++j) x[j] = w[j].real();
              return r(x);
            });
          },
          [n](const Measure::AlphaHorizontal& h) -> std::optional<PointFn> {
            auto r = ac_density(h.rho);
            if (!r) return std::nullopt;
            return PointFn([r = *r, n, alpha = h.alpha](std::span<const cplx> w) {
              std::vector<double> x(n), y(n);
              for (std::size_t j = 0; j < n; ++j) {
                x[j] = w[j].real();
                y[j] = w[j].imag();
              }
              return r(x) * alpha_weight(alpha, y);
            });
          },
          [](const Measure::Pushforward& p) -> std::optional<PointFn> {
            auto b = ac_density(*p.base);
            if (!b) return std::nullopt;
            // density of mu_X at u is f(X u)
            return PointFn([b = *b, X = p.X](std::span<const cplx> u) {
              const ComplexVector m = X * to_vector(u);
              return b(std::span<const cplx>(m.data(), static_cast<std::size_t>(m.size())));
            });
          },
          [](const Measure::Weighted& wt) -> std::optional<PointFn> {
            auto b = ac_density(*wt.base);
            if (!b) return std::nullopt;
            return PointFn([b = *b, p = wt.p](std::span<const cplx> w) { return b(w) * weight_function(p, w); });
          },
      },
      mu.kind());
}

// Polar quadrature of h over the polydisk prod {|w_j - z_j| < r_j}.
cplx polydisk_integral(const PointFn& h, const ComplexVector& z, const RealVector& r, const QuadratureConfig& cfg) {
  const auto n = static_cast<std::size_t>(z.size());
  const QuadRule& gl = legendre_rule(cfg.radial_order);
  const std::size_t nr = gl.nodes.size();
  const std::size_t nt = static_cast<std::size_t>(cfg.angular_order);
  if (nt < 1) throw std::invalid_argument("polydisk_integral: angular order must be >= 1");
  // per-disk node list
  std::vector<std::vector<cplx>> offsets(n);
  std::vector<std::vector<double>> weights(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double R = r(static_cast<Eigen::Index>(j));
    for (std::size_t a = 0; a < nr; ++a) {
      const double rho = 0.5 * R * (1.0 + gl.nodes[a]);
      const double wr = 0.5 * R * gl.weights[a] * rho;
      for (std::size_t b = 0; b < nt; ++b) {
        const double th = 2.0 * pi * (static_cast<double>(b) + 0.5) / static_cast<double>(nt);
        offsets[j].push_back(std::polar(rho, th));
        weights[j].push_back(wr * 2.0 * pi / static_cast<double>(nt));
      }
    }
  }
  const std::size_t per = nr * nt;
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= per;
  std::vector<std::size_t> idx(n, 0);
  std::vector<cplx> w(n);
  cplx sum = 0.0;
  for (std::size_t count = 0; count < total; ++count) {
    double wt = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = z(static_cast<Eigen::Index>(j)) + offsets[j][idx[j]];
      wt *= weights[j][idx[j]];
    }
    sum += wt * h(w);
    for (std::size_t j = n; j-- > 0;) {
      if (++idx[j] < per) break;
      idx[j] = 0;
    }
  }
  return sum;
}

bool inside_polydisk(std::span<const cplx> w, const ComplexVector& z, const RealVector& r) {
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (std::abs(w[j] - z(static_cast<Eigen::Index>(j))) >= r(static_cast<Eigen::Index>(j))) return false;
  }
  return true;
}

bool is_diagonal(const ComplexMatrix& X) {
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (i != j && std::abs(X(i, j)) > 1e-14) return false;
    }
  }
  return true;
}

// \int_{B_r(z)} g d mu ; g == nullptr means g = 1.
cplx ball_integral(const Measure& mu, const ComplexVector& z, const RealVector& r, const PointFn& g,
                   const QuadratureConfig& cfg) {
  const std::size_t n = mu.dim();
  const auto gval = [&](std::span<const cplx> w) -> cplx { return g ? g(w) : cplx(1.0); };
  const auto exact_area = [&] {
    double a = 1.0;
    for (std::size_t j = 0; j < n; ++j) a *= pi * r(static_cast<Eigen::Index>(j)) * r(static_cast<Eigen::Index>(j));
    return cplx(a);
  };

  if (const auto* at = mu.as<Measure::Atoms>()) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < at->points.size(); ++i) {
      const std::span<const cplx> w(at->points[i].data(), n);
      if (inside_polydisk(w, z, r)) sum += at->weights[i] * gval(w);
    }
    return sum;
  }
  if (mu.as<Measure::Lebesgue>() && !g) return exact_area();
  if (const auto* h = mu.as<Measure::Horizontal>(); h && !g && std::holds_alternative<RealMeasure::Lebesgue>(h->rho.kind())) {
    return exact_area();
  }
  if (const auto* wt = mu.as<Measure::Weighted>()) {
    const WeightExponent p = wt->p;
    PointFn gw = [p, g](std::span<const cplx> w) -> cplx { return (g ? g(w) : cplx(1.0)) * weight_function(p, w); };
    return ball_integral(*wt->base, z, r, gw, cfg);
  }
  if (const auto* pf = mu.as<Measure::Pushforward>(); pf && is_diagonal(pf->X)) {
    // X B_r(z) = B_r(X z) for a diagonal unitary
    const ComplexMatrix Xs = pf->X.adjoint();
    PointFn gx = [Xs, g](std::span<const cplx> w) -> cplx {
      if (!g) return 1.0;
      const ComplexVector m = Xs * to_vector(w);
      return g(std::span<const cplx>(m.data(), static_cast<std::size_t>(m.size())));
    };
    return ball_integral(*pf->base, pf->X * z, r, gx, cfg);
  }

  // Horizontal over atoms: integrate along the vertical chords of each disk.
  auto chord_integral = [&](const RealMeasure::Atoms& at, const std::vector<int>* alpha) {
    const QuadRule& gl = legendre_rule(cfg.radial_order);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < at.points.size(); ++i) {
      std::vector<double> lo(n), half(n);
      bool hit = true;
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = at.points[i](static_cast<Eigen::Index>(j)) - z(static_cast<Eigen::Index>(j)).real();
        const double R = r(static_cast<Eigen::Index>(j));
        if (std::abs(dx) >= R) {
          hit = false;
          break;
        }
        half[j] = std::sqrt(R * R - dx * dx);
        lo[j] = z(static_cast<Eigen::Index>(j)).imag();
      }
      if (!hit) continue;
      if (!g && !alpha) {
        double len = 1.0;
        for (std::size_t j = 0; j < n; ++j) len *= 2.0 * half[j];
        sum += at.weights[i] * len;
        continue;
      }
      const std::size_t m = gl.nodes.size();
      std::size_t total = 1;
      for (std::size_t j = 0; j < n; ++j) total *= m;
      std::vector<std::size_t> idx(n, 0);
      std::vector<cplx> w(n);
      std::vector<double> y(n);
      cplx acc = 0.0;
      for (std::size_t count = 0; count < total; ++count) {
        double wt = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
          y[j] = lo[j] + half[j] * gl.nodes[idx[j]];
          wt *= half[j] * gl.weights[idx[j]];
          w[j] = cplx(at.points[i](static_cast<Eigen::Index>(j)), y[j]);
        }
        double vw = alpha ? alpha_weight(*alpha, y) : 1.0;
        acc += wt * vw * gval(w);
        for (std::size_t j = n; j-- > 0;) {
          if (++idx[j] < m) break;
          idx[j] = 0;
        }
      }
      sum += at.weights[i] * acc;
    }
    return sum;
  };
  if (const auto* h = mu.as<Measure::Horizontal>()) {
    if (const auto* at = std::get_if<RealMeasure::Atoms>(&h->rho.kind())) return chord_integral(*at, nullptr);
  }
  if (const auto* h = mu.as<Measure::AlphaHorizontal>()) {
    if (const auto* at = std::get_if<RealMeasure::Atoms>(&h->rho.kind())) return chord_integral(*at, &h->alpha);
  }

  auto density = ac_density(mu);
  if (!density) {
    throw std::domain_error("ball_mass: unsupported measure for polydisk integration: " + mu.describe());
  }
  PointFn integrand = [d = *density, g](std::span<const cplx> w) -> cplx { return d(w) * (g ? g(w) : cplx(1.0)); };
  return polydisk_integral(integrand, z, r, cfg);
}

}  // namespace

cplx ball_mass(const Measure& mu, const ComplexVector& center, const RealVector& r, const QuadratureConfig& cfg) {
  require_dim(mu.dim(), center.size(), "ball_mass center");
  require_dim(mu.dim(), r.size(), "ball_mass radius");
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    if (!(r(j) > 0.0)) throw std::invalid_argument("ball_mass: radii must be positive");
  }
  return ball_integral(mu, center, r, nullptr, cfg);
}

}  // namespace focklab
