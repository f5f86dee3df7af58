#include "focklab/index.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "focklab/types.hpp"

namespace focklab {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("exact integer overflow (64-bit)");
  }
  return out;
}

template <class Range>
std::string join(const Range& r, double scale) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto v : r) {
    if (!first) os << ',';
    first = false;
    os << v * scale;
  }
  os << ')';
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative entry " + std::to_string(e));
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zeros(std::size_t n) { return MultiIndex(std::vector<int>(n, 0)); }

MultiIndex MultiIndex::unit(std::size_t n, std::size_t axis) {
  std::vector<int> e(n, 0);
  e.at(axis) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

bool MultiIndex::leq(const MultiIndex& other) const {
  require_same_dim(dim(), other.dim(), "MultiIndex::leq");
  for (std::size_t j = 0; j < dim(); ++j) {
    if (entries_[j] > other.entries_[j]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require_same_dim(dim(), other.dim(), "MultiIndex::operator+");
  std::vector<int> e(dim());
  for (std::size_t j = 0; j < dim(); ++j) e[j] = entries_[j] + other.entries_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require_same_dim(dim(), other.dim(), "MultiIndex::operator-");
  if (!other.leq(*this)) {
    throw std::domain_error("MultiIndex: " + other.str() + " is not <= " + str());
  }
  std::vector<int> e(dim());
  for (std::size_t j = 0; j < dim(); ++j) e[j] = entries_[j] - other.entries_[j];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::str() const { return join(entries_, 1); }

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  const int ta = a.total();
  const int tb = b.total();
  if (ta != tb) return ta < tb;
  return a < b;
}

// ---------------------------------------------------------------------------
// WeightExponent

WeightExponent WeightExponent::from_doubled(std::vector<int> doubled) {
  if (doubled.empty()) throw std::invalid_argument("WeightExponent: dimension must be >= 1");
  WeightExponent w;
  w.doubled_ = std::move(doubled);
  return w;
}

WeightExponent WeightExponent::zeros(std::size_t n) {
  return from_doubled(std::vector<int>(n, 0));
}

bool WeightExponent::is_zero() const {
  for (int d : doubled_) {
    if (d != 0) return false;
  }
  return true;
}

WeightExponent WeightExponent::operator+(const WeightExponent& other) const {
  require_same_dim(dim(), other.dim(), "WeightExponent::operator+");
  std::vector<int> d(dim());
  for (std::size_t j = 0; j < dim(); ++j) d[j] = doubled_[j] + other.doubled_[j];
  return from_doubled(std::move(d));
}

WeightExponent WeightExponent::operator-(const WeightExponent& other) const {
  return *this + (-other);
}

WeightExponent WeightExponent::operator-() const {
  std::vector<int> d(dim());
  for (std::size_t j = 0; j < dim(); ++j) d[j] = -doubled_[j];
  return from_doubled(std::move(d));
}

std::string WeightExponent::str() const { return join(doubled_, 0.5); }

// ---------------------------------------------------------------------------
// HalfIndex

HalfIndex HalfIndex::from_doubled(std::vector<int> doubled) {
  if (doubled.empty()) throw std::invalid_argument("HalfIndex: dimension must be >= 1");
  for (int d : doubled) {
    if (d < 0) throw std::invalid_argument("HalfIndex: negative entry (doubled " + std::to_string(d) + ")");
  }
  HalfIndex k;
  k.doubled_ = std::move(doubled);
  return k;
}

HalfIndex HalfIndex::from_integer(const MultiIndex& k) {
  std::vector<int> d(k.dim());
  for (std::size_t j = 0; j < k.dim(); ++j) d[j] = 2 * k[j];
  return from_doubled(std::move(d));
}

HalfIndex HalfIndex::zeros(std::size_t n) { return from_doubled(std::vector<int>(n, 0)); }

bool HalfIndex::is_integer() const {
  for (int d : doubled_) {
    if (d % 2 != 0) return false;
  }
  return true;
}

bool HalfIndex::is_zero() const {
  for (int d : doubled_) {
    if (d != 0) return false;
  }
  return true;
}

MultiIndex HalfIndex::twice() const { return MultiIndex(doubled_); }

MultiIndex HalfIndex::as_integer() const {
  if (!is_integer()) throw std::domain_error("HalfIndex " + str() + " is not an integer index");
  std::vector<int> e(dim());
  for (std::size_t j = 0; j < dim(); ++j) e[j] = doubled_[j] / 2;
  return MultiIndex(std::move(e));
}

WeightExponent HalfIndex::as_weight() const { return WeightExponent::from_doubled(doubled_); }

bool HalfIndex::geq(const HalfIndex& other) const {
  require_same_dim(dim(), other.dim(), "HalfIndex::geq");
  for (std::size_t j = 0; j < dim(); ++j) {
    if (doubled_[j] < other.doubled_[j]) return false;
  }
  return true;
}

HalfIndex HalfIndex::operator+(const HalfIndex& other) const {
  require_same_dim(dim(), other.dim(), "HalfIndex::operator+");
  std::vector<int> d(dim());
  for (std::size_t j = 0; j < dim(); ++j) d[j] = doubled_[j] + other.doubled_[j];
  return from_doubled(std::move(d));
}

WeightExponent HalfIndex::operator-(const HalfIndex& other) const {
  return as_weight() - other.as_weight();
}

std::string HalfIndex::str() const { return join(doubled_, 0.5); }

// ---------------------------------------------------------------------------
// Combinatorics

std::uint64_t factorial(const MultiIndex& alpha) {
  std::uint64_t out = 1;
  for (int a : alpha.entries()) {
    for (int i = 2; i <= a; ++i) out = checked_mul(out, static_cast<std::uint64_t>(i));
  }
  return out;
}

std::uint64_t binomial(const MultiIndex& m, const MultiIndex& beta) {
  require_same_dim(m.dim(), beta.dim(), "binomial");
  if (!beta.leq(m)) {
    throw std::domain_error("binomial: " + beta.str() + " is not <= " + m.str());
  }
  std::uint64_t out = 1;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const int top = m[j];
    const int k = std::min(beta[j], top - beta[j]);
    // C(top, i) = C(top, i-1) * (top-i+1) / i stays integral at every step.
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
      const std::uint64_t num = static_cast<std::uint64_t>(top - i + 1);
      const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(i));
      c = checked_mul(c / g, num / (i / g));
    }
    out = checked_mul(out, c);
  }
  return out;
}

double factorial_real(int m) {
  if (m < 0) throw std::domain_error("factorial_real: negative argument");
  double out = 1.0;
  for (int i = 2; i <= m; ++i) out *= i;
  return out;
}

double factorial_real(const MultiIndex& alpha) {
  double out = 1.0;
  for (int a : alpha.entries()) out *= factorial_real(a);
  return out;
}

double gamma_half(int doubled) {
  if (doubled < 0) throw std::domain_error("gamma_half: negative argument");
  // Gamma(m/2 + 1) = (m/2) Gamma(m/2), bottoming out at Gamma(1) or Gamma(3/2).
  double out = (doubled % 2 == 0) ? 1.0 : 0.5 * sqrt_pi;
  for (int d = doubled; d >= 2; d -= 2) out *= 0.5 * d;
  return out;
}

double gamma_factorial(const HalfIndex& k) {
  double out = 1.0;
  for (int d : k.doubled()) out *= gamma_half(d);
  return out;
}

std::vector<double> hermite_all(int m, double x) {
  if (m < 0) throw std::domain_error("hermite: negative degree");
  std::vector<double> h(static_cast<std::size_t>(m) + 1);
  h[0] = 1.0;
  if (m >= 1) h[1] = 2.0 * x;
  for (int j = 1; j < m; ++j) h[j + 1] = 2.0 * x * h[j] - 2.0 * j * h[j - 1];
  return h;
}

double hermite(int m, double x) { return hermite_all(m, x).back(); }

double hermite_product(const MultiIndex& m, std::span<const double> t) {
  require_same_dim(m.dim(), t.size(), "hermite_product");
  double out = 1.0;
  for (std::size_t j = 0; j < m.dim(); ++j) out *= hermite(m[j], t[j]);
  return out;
}

}  // namespace focklab
