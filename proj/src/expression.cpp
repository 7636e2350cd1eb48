#include "mdem/expression.hpp"

#include <cctype>
#include <cstdlib>

#include "mdem/errors.hpp"

namespace mdem {

class ExprParser {
 public:
  ExprParser(const std::string& text, Expr& out) : text_(text), out_(out) {}

  void run() {
    out_.nodes_.clear();
    out_.root_ = parse_sum();
    skip_space();
    if (pos_ != text_.size())
      throw ConfigError("expression: trailing characters at '" + text_.substr(pos_) + "'");
    out_.text_ = text_;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(char kind, int a = -1, int b = -1, double value = 0.0) {
    out_.nodes_.push_back({kind, a, b, value});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int parse_sum() {
    int lhs = parse_product();
    for (;;) {
      if (eat('+'))
        lhs = add('+', lhs, parse_product());
      else if (eat('-'))
        lhs = add('-', lhs, parse_product());
      else
        return lhs;
    }
  }

  int parse_product() {
    int lhs = parse_factor();
    while (eat('*')) lhs = add('*', lhs, parse_factor());
    return lhs;
  }

  int parse_factor() {
    if (eat('-')) return add('n', parse_factor());
    return parse_primary();
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ConfigError("expression: unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_sum();
      if (!eat(')')) throw ConfigError("expression: missing ')'");
      return inner;
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      return add('X');
    }
    if (c == 'Y' || c == 'y') {
      ++pos_;
      return add('Y');
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      double value = std::strtod(begin, &end);
      if (end == begin) throw ConfigError("expression: bad number near '" + text_.substr(pos_) + "'");
      pos_ += static_cast<size_t>(end - begin);
      return add('c', -1, -1, value);
    }
    throw ConfigError(std::string("expression: unexpected character '") + c + "'");
  }

  const std::string& text_;
  Expr& out_;
  size_t pos_ = 0;
};

Expr Expr::parse(const std::string& text) {
  Expr e;
  ExprParser(text, e).run();
  return e;
}

Expr Expr::constant(double c) {
  Expr e;
  e.nodes_.push_back({'c', -1, -1, c});
  e.root_ = 0;
  e.text_ = std::to_string(c);
  return e;
}

bool Expr::is_zero() const {
  if (root_ < 0) return true;
  const Node& n = nodes_[static_cast<size_t>(root_)];
  return n.kind == 'c' && n.value == 0.0;
}

Jet2 Expr::eval_node(int node, Vec2 x) const {
  const Node& n = nodes_[static_cast<size_t>(node)];
  switch (n.kind) {
    case 'c':
      return {n.value, 0, 0, 0, 0, 0};
    case 'X':
      return {x.x, 1, 0, 0, 0, 0};
    case 'Y':
      return {x.y, 0, 1, 0, 0, 0};
    case 'n': {
      Jet2 a = eval_node(n.a, x);
      return {-a.v, -a.dx, -a.dy, -a.dxx, -a.dxy, -a.dyy};
    }
    case '+': {
      Jet2 a = eval_node(n.a, x), b = eval_node(n.b, x);
      return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxx + b.dxx, a.dxy + b.dxy, a.dyy + b.dyy};
    }
    case '-': {
      Jet2 a = eval_node(n.a, x), b = eval_node(n.b, x);
      return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxx - b.dxx, a.dxy - b.dxy, a.dyy - b.dyy};
    }
    case '*': {
      Jet2 a = eval_node(n.a, x), b = eval_node(n.b, x);
      Jet2 r;
      r.v = a.v * b.v;
      r.dx = a.dx * b.v + a.v * b.dx;
      r.dy = a.dy * b.v + a.v * b.dy;
      r.dxx = a.dxx * b.v + 2.0 * a.dx * b.dx + a.v * b.dxx;
      r.dxy = a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy;
      r.dyy = a.dyy * b.v + 2.0 * a.dy * b.dy + a.v * b.dyy;
      return r;
    }
    default:
      return {};
  }
}

Jet2 Expr::eval_jet(Vec2 x) const {
  if (root_ < 0) return {};
  return eval_node(root_, x);
}

}  // namespace mdem
