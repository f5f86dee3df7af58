#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace focklab {

/// Tuple of n >= 1 nonnegative integer exponents.
///
/// The default ordering (operator<=>) is plain lexicographic; the graded
/// ordering used for basis enumeration lives in `graded_less`.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  static MultiIndex zeros(std::size_t n);
  static MultiIndex unit(std::size_t n, std::size_t axis);

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  std::span<const int> entries() const { return entries_; }
  int total() const;

  /// Componentwise partial order: this <= other.
  bool leq(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Throws std::domain_error unless other <= *this.
  MultiIndex operator-(const MultiIndex& other) const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const;

 private:
  std::vector<int> entries_;
};

/// Total degree first, then lexicographic.
bool graded_less(const MultiIndex& a, const MultiIndex& b);

/// Signed exponent tuple with half-integer entries, stored doubled.
/// Used for the weight exponents p in mu_p, which may be negative.
class WeightExponent {
 public:
  WeightExponent() = default;
  static WeightExponent from_doubled(std::vector<int> doubled);
  static WeightExponent zeros(std::size_t n);

  std::size_t dim() const { return doubled_.size(); }
  std::span<const int> doubled() const { return doubled_; }
  double value(std::size_t j) const { return 0.5 * doubled_[j]; }
  bool is_zero() const;

  WeightExponent operator+(const WeightExponent& other) const;
  WeightExponent operator-(const WeightExponent& other) const;
  WeightExponent operator-() const;

  friend bool operator==(const WeightExponent&, const WeightExponent&) = default;

  std::string str() const;

 private:
  std::vector<int> doubled_;
};

/// Nonnegative half-integer tuple k in (Z_+/2)^n, stored as 2k.
class HalfIndex {
 public:
  HalfIndex() = default;
  static HalfIndex from_doubled(std::vector<int> doubled);
  static HalfIndex from_integer(const MultiIndex& k);
  static HalfIndex zeros(std::size_t n);

  std::size_t dim() const { return doubled_.size(); }
  std::span<const int> doubled() const { return doubled_; }
  double value(std::size_t j) const { return 0.5 * doubled_[j]; }
  bool is_integer() const;
  bool is_zero() const;

  /// 2k as an integer multi-index.
  MultiIndex twice() const;
  /// k itself; throws std::domain_error if some entry is a half-integer.
  MultiIndex as_integer() const;
  WeightExponent as_weight() const;

  /// Componentwise k >= other.
  bool geq(const HalfIndex& other) const;
  HalfIndex operator+(const HalfIndex& other) const;
  /// k - p as a signed weight exponent.
  WeightExponent operator-(const HalfIndex& other) const;

  friend bool operator==(const HalfIndex&, const HalfIndex&) = default;

  std::string str() const;

 private:
  std::vector<int> doubled_;
};

/// alpha! = prod alpha_j!, exact. Throws std::overflow_error past 64 bits.
std::uint64_t factorial(const MultiIndex& alpha);

/// prod C(m_j, beta_j), exact. Throws std::domain_error unless beta <= m,
/// std::overflow_error past 64 bits.
std::uint64_t binomial(const MultiIndex& m, const MultiIndex& beta);

/// alpha! in floating point (no overflow check beyond IEEE range).
double factorial_real(const MultiIndex& alpha);
double factorial_real(int m);

/// Gamma(m/2 + 1) for an integer m >= 0, from the exact half-integer
/// recursion down to Gamma(1) = 1 or Gamma(3/2) = sqrt(pi)/2.
double gamma_half(int doubled);

/// prod_j Gamma(k_j + 1), i.e. "k!" for half-integer k.
double gamma_factorial(const HalfIndex& k);

/// Physicists' Hermite polynomial H_m(x).
double hermite(int m, double x);

/// H_0(x), ..., H_m(x) in one pass.
std::vector<double> hermite_all(int m, double x);

/// prod_j H_{m_j}(t_j).
double hermite_product(const MultiIndex& m, std::span<const double> t);

}  // namespace focklab
