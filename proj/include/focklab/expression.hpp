#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

/// Raised with the 0-based column of the offending character.
class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(const std::string& message, std::size_t column)
      : std::runtime_error(message + " (column " + std::to_string(column + 1) + ")"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Arithmetic over complex numbers: + - * / ^, parentheses, numbers,
/// constants pi and i, functions exp sqrt abs re im conj, and the variables
/// x1..xn, y1..yn (x, y when n = 1).
class Expression {
 public:
  /// n = 0 allows no variables (a constant expression).
  static Expression parse(const std::string& text, std::size_t n);

  cplx operator()(std::span<const double> x, std::span<const double> y) const;
  cplx constant() const;

  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  std::size_t n_ = 0;
};

/// Parses a constant complex expression such as "0.5", "-1+2i", "(1-i)/sqrt(2)".
cplx parse_complex(const std::string& text);

}  // namespace focklab
