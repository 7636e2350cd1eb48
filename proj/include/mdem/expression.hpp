#pragma once

#include <string>
#include <vector>

#include "mdem/tensor.hpp"

namespace mdem {

/// Value of a coordinate expression together with its first and second
/// spatial derivatives at one point.
struct Jet2 {
  double v = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dxy = 0.0;
  double dyy = 0.0;
};

/// Closed-form scalar field of the reference coordinates built from the
/// grammar: numbers, X, Y, +, -, *, unary minus, parentheses. Polynomial by
/// construction, so all derivatives are exact.
class Expr {
 public:
  Expr() = default;

  static Expr parse(const std::string& text);
  static Expr constant(double c);

  Jet2 eval_jet(Vec2 x) const;
  double eval(Vec2 x) const { return eval_jet(x).v; }

  /// True when the expression is the literal constant zero.
  bool is_zero() const;

  const std::string& text() const { return text_; }

 private:
  struct Node {
    char kind = 'c';  // 'c' constant, 'X', 'Y', '+', '-', '*', 'n' negate
    int a = -1;
    int b = -1;
    double value = 0.0;
  };

  Jet2 eval_node(int node, Vec2 x) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::string text_ = "0";

  friend class ExprParser;
};

}  // namespace mdem
