#include "focklab/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>

namespace focklab {

struct Expression::Node {
  enum class Kind { number, var_x, var_y, add, sub, mul, div, pow, neg, func };
  Kind kind = Kind::number;
  cplx value;
  std::size_t var = 0;
  std::string func;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = {}, NodePtr b = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, std::size_t n) : s_(s), n_(n) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) throw ExpressionError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make(Node::Kind::add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Node::Kind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = make(Node::Kind::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Node::Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ExpressionError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) throw ExpressionError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ExpressionError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw ExpressionError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    // "2i" is an imaginary literal
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      n->value = cplx(0.0, v);
    } else {
      n->value = v;
    }
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    auto n = std::make_shared<Node>();
    if (name == "pi") {
      n->value = pi;
      return n;
    }
    if (name == "i") {
      n->value = cplx(0.0, 1.0);
      return n;
    }
    if (name == "exp" || name == "sqrt" || name == "abs" || name == "re" || name == "im" || name == "conj") {
      if (!accept('(')) throw ExpressionError("expected '(' after " + name, pos_);
      n->kind = Node::Kind::func;
      n->func = name;
      n->lhs = expr();
      if (!accept(')')) throw ExpressionError("expected ')'", pos_);
      return n;
    }
    if ((name[0] == 'x' || name[0] == 'y') && n_ > 0) {
      std::size_t index = 0;
      if (name.size() == 1) {
        if (n_ != 1) throw ExpressionError("use " + name + "1.." + name + std::to_string(n_) + " when n > 1", start);
        index = 0;
      } else {
        const std::string digits = name.substr(1);
        if (digits.find_first_not_of("0123456789") != std::string::npos) {
          throw ExpressionError("unknown identifier '" + name + "'", start);
        }
        const long j = std::strtol(digits.c_str(), nullptr, 10);
        if (j < 1 || static_cast<std::size_t>(j) > n_) {
          throw ExpressionError("variable '" + name + "' out of range for n = " + std::to_string(n_), start);
        }
        index = static_cast<std::size_t>(j - 1);
      }
      n->kind = name[0] == 'x' ? Node::Kind::var_x : Node::Kind::var_y;
      n->var = index;
      return n;
    }
    throw ExpressionError("unknown identifier '" + name + "'", start);
  }

  const std::string& s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

cplx eval(const Node& node, std::span<const double> x, std::span<const double> y) {
  switch (node.kind) {
    case Node::Kind::number:
      return node.value;
    case Node::Kind::var_x:
      return x[node.var];
    case Node::Kind::var_y:
      return y[node.var];
    case Node::Kind::add:
      return eval(*node.lhs, x, y) + eval(*node.rhs, x, y);
    case Node::Kind::sub:
      return eval(*node.lhs, x, y) - eval(*node.rhs, x, y);
    case Node::Kind::mul:
      return eval(*node.lhs, x, y) * eval(*node.rhs, x, y);
    case Node::Kind::div:
      return eval(*node.lhs, x, y) / eval(*node.rhs, x, y);
    case Node::Kind::neg:
      return -eval(*node.lhs, x, y);
    case Node::Kind::pow: {
      const cplx b = eval(*node.lhs, x, y);
      const cplx e = eval(*node.rhs, x, y);
      // integer exponents stay exact for negative real bases
      if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64) {
        return std::pow(b, static_cast<int>(e.real()));
      }
      if (b.imag() == 0.0 && e.imag() == 0.0 && b.real() >= 0.0) return std::pow(b.real(), e.real());
      return std::pow(b, e);
    }
    case Node::Kind::func: {
      const cplx a = eval(*node.lhs, x, y);
      if (node.func == "exp") return a.imag() == 0.0 ? cplx(std::exp(a.real())) : std::exp(a);
      if (node.func == "sqrt") return (a.imag() == 0.0 && a.real() >= 0.0) ? cplx(std::sqrt(a.real())) : std::sqrt(a);
      if (node.func == "abs") return std::abs(a);
      if (node.func == "re") return a.real();
      if (node.func == "im") return a.imag();
      return std::conj(a);
    }
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text, std::size_t n) {
  Expression e;
  e.root_ = Parser(text, n).parse();
  e.text_ = text;
  e.n_ = n;
  return e;
}

cplx Expression::operator()(std::span<const double> x, std::span<const double> y) const {
  if (x.size() < n_ || y.size() < n_) throw std::invalid_argument("Expression: too few coordinates");
  return eval(*root_, x, y);
}

cplx Expression::constant() const { return eval(*root_, {}, {}); }

cplx parse_complex(const std::string& text) { return Expression::parse(text, 0).constant(); }

}  // namespace focklab
