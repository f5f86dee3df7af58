#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "focklab/index.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// Quadrature orders shared by every integral over measures.
struct QuadratureConfig {
  int moment_order = 40;    ///< Gauss-Hermite nodes per real axis for moments and Berezin integrals
  int spectral_order = 80;  ///< Gauss-Hermite nodes per axis for spectral functions
  int radial_order = 24;    ///< Gauss-Legendre nodes in r for polydisk masses
  int angular_order = 48;   ///< trapezoid nodes in theta for polydisk masses
};

/// Declared Gaussian decay of a density: f(t) = e^{-|t - center|^2 / sigma^2} q(t)
/// with q of at most polynomial growth. Quadrature nodes are placed for the
/// envelope; q is what the rule actually samples.
struct GaussianEnvelope {
  ComplexVector center;  // real part used for measures on R^n
  double sigma = 1.0;
};

// ---------------------------------------------------------------------------
// Measures on R^n

class RealMeasure {
 public:
  struct Atoms {
    std::vector<RealVector> points;
    std::vector<cplx> weights;
  };
  struct Lebesgue {};
  struct Density {
    std::function<cplx(const RealVector&)> f;
    std::optional<GaussianEnvelope> envelope;
    std::string label;
  };
  using Kind = std::variant<Atoms, Lebesgue, Density>;

  static RealMeasure atoms(std::vector<RealVector> points, std::vector<cplx> weights);
  static RealMeasure dirac(const RealVector& point, cplx weight = 1.0);
  static RealMeasure lebesgue(std::size_t n);
  /// e^{-|t - center|^2 / sigma^2} dt (unnormalized).
  static RealMeasure gaussian(std::size_t n, double sigma, std::optional<RealVector> center = {});
  static RealMeasure density(std::size_t n, std::function<cplx(const RealVector&)> f,
                             std::optional<GaussianEnvelope> envelope = {}, std::string label = "density");

  std::size_t dim() const { return dim_; }
  const Kind& kind() const { return kind_; }
  bool is_atomic() const { return std::holds_alternative<Atoms>(kind_); }

  /// |rho|: moduli of atom weights, |f| for densities.
  RealMeasure variation() const;
  /// Sum of weighted atoms; both operands must be atomic.
  RealMeasure operator+(const RealMeasure& other) const;

  std::string describe() const;

 private:
  RealMeasure(std::size_t n, Kind k) : dim_(n), kind_(std::move(k)) {}
  std::size_t dim_ = 0;
  Kind kind_;
};

// ---------------------------------------------------------------------------
// Measures on C^n

class Measure {
 public:
  struct Atoms {
    std::vector<ComplexVector> points;
    std::vector<cplx> weights;
  };
  struct Lebesgue {};
  struct Density {
    std::function<cplx(const ComplexVector&)> f;
    std::optional<GaussianEnvelope> envelope;
    std::string label;
  };
  /// rho (x) nu_n
  struct Horizontal {
    RealMeasure rho;
  };
  /// rho (x) nu_{n,alpha}, d nu_{n,alpha}(y) = prod (1 + y_j^2)^{-alpha_j} dy
  struct AlphaHorizontal {
    RealMeasure rho;
    std::vector<int> alpha;
  };
  /// mu_X(E) = mu(X E)
  struct Pushforward {
    std::shared_ptr<const Measure> base;
    ComplexMatrix X;
  };
  /// mu_p, density prod (1 + x_j^2)^{p_j} (1 + y_j^2)^{p_j} against base
  struct Weighted {
    std::shared_ptr<const Measure> base;
    WeightExponent p;
  };
  using Kind = std::variant<Atoms, Lebesgue, Density, Horizontal, AlphaHorizontal, Pushforward, Weighted>;

  static Measure atoms(std::vector<ComplexVector> points, std::vector<cplx> weights);
  static Measure dirac(const ComplexVector& point, cplx weight = 1.0);
  static Measure lebesgue(std::size_t n);
  /// e^{-|w - center|^2 / sigma^2} d nu_{2n}(w).
  static Measure gaussian(std::size_t n, double sigma, std::optional<ComplexVector> center = {});
  static Measure density(std::size_t n, std::function<cplx(const ComplexVector&)> f,
                         std::optional<GaussianEnvelope> envelope = {}, std::string label = "density");
  static Measure horizontal(RealMeasure rho);
  static Measure alpha_horizontal(RealMeasure rho, std::vector<int> alpha);

  std::size_t dim() const { return dim_; }
  const Kind& kind() const { return kind_; }

  template <class T>
  const T* as() const { return std::get_if<T>(&kind_); }

  std::string describe() const;

 private:
  Measure(std::size_t n, Kind k) : dim_(n), kind_(std::move(k)) {}
  friend Measure weight(const Measure&, const WeightExponent&);
  friend Measure pushforward(const Measure&, const ComplexMatrix&);
  friend Measure variation(const Measure&);

  std::size_t dim_ = 0;
  Kind kind_;
};

/// mu_p. Nested weights collapse: weight(weight(mu, p), q) == weight(mu, p + q),
/// and p = 0 returns mu unchanged.
Measure weight(const Measure& mu, const WeightExponent& p);

/// mu_X with integration contract \int g d mu_X = \int g(X^* w) d mu(w).
/// Throws std::invalid_argument unless X is unitary to 1e-12.
Measure pushforward(const Measure& mu, const ComplexMatrix& X);

/// |mu|.
Measure variation(const Measure& mu);

/// True when every weight/density value is real (checked structurally for
/// atoms; densities are probed at a few points).
bool is_real_measure(const Measure& mu);

// ---------------------------------------------------------------------------
// Discretization: a weighted point cloud reproducing Gaussian-windowed integrals

/// Flat storage of quadrature nodes w_i in C^n with complex weights c_i.
struct NodeCloud {
  std::size_t dim = 0;
  std::vector<cplx> points;   // size dim * count, node-major
  std::vector<cplx> weights;  // size count

  std::size_t size() const { return weights.size(); }
  std::span<const cplx> point(std::size_t i) const { return {points.data() + i * dim, dim}; }
};

/// Nodes with \int g(w) e^{-a |w - center|^2} d mu(w) ~= sum_i c_i g(w_i)
/// for smooth g of moderate growth.
NodeCloud discretize(const Measure& mu, double a, const ComplexVector& center,
                     const QuadratureConfig& cfg = {});

/// Real-line analogue for measures on R^n.
struct RealNodeCloud {
  std::size_t dim = 0;
  std::vector<double> points;
  std::vector<cplx> weights;
  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const { return {points.data() + i * dim, dim}; }
};

RealNodeCloud discretize(const RealMeasure& rho, double a, const RealVector& center, int order);

/// \int g(w) e^{-a |w - c|^2} d mu(w).
cplx gaussian_integral(const Measure& mu, const std::function<cplx(std::span<const cplx>)>& g, double a,
                       const ComplexVector& center, const QuadratureConfig& cfg = {});

/// \int g(t) e^{-a |t - c|^2} d rho(t).
cplx gaussian_integral(const RealMeasure& rho, const std::function<cplx(std::span<const double>)>& g,
                       double a, const RealVector& center, int order);

// ---------------------------------------------------------------------------
// Moments

/// m_{alpha,beta}(mu) = \int w^alpha conj(w)^beta e^{-|w|^2} d mu(w).
cplx moment(const Measure& mu, const MultiIndex& alpha, const MultiIndex& beta,
            const QuadratureConfig& cfg = {});

/// All moments with |alpha|, |beta| <= max_degree from a single quadrature pass.
/// Row/column order is graded-lex (see enumerate_multi_indices).
struct MomentTable {
  std::vector<MultiIndex> indices;
  ComplexMatrix values;  // values(i, j) = m_{indices[i], indices[j]}
  std::size_t position(const MultiIndex& alpha) const;
};

MomentTable moment_table(const Measure& mu, int max_degree, const QuadratureConfig& cfg = {});

/// All multi-indices in n variables with |alpha| <= max_degree, graded-lex.
std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, int max_degree);

// ---------------------------------------------------------------------------
// Polydisk masses

/// mu(B_r(center)) for the polydisk prod {|w_j - z_j| < r_j}. Atoms and
/// Lebesgue are exact; absolutely continuous parts use polar quadrature on
/// each disk; horizontal measures over atoms integrate along chords.
cplx ball_mass(const Measure& mu, const ComplexVector& center, const RealVector& r,
               const QuadratureConfig& cfg = {});

/// prod_j (1 + x_j^2)^{p_j} (1 + y_j^2)^{p_j}
double weight_function(const WeightExponent& p, std::span<const cplx> w);

bool is_unitary(const ComplexMatrix& X, double tol = 1e-12);

}  // namespace focklab
