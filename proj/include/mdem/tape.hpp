#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace mdem::ad {

class Tape;

namespace detail {
inline thread_local Tape* active_tape = nullptr;
}

/// Recorded scalar expression graph. Nodes store their argument ids and the
/// local partial derivatives with respect to those arguments; a reverse sweep
/// visits nodes in descending id order (anti-topological by construction) and
/// accumulates adjoints additively. Parameter leaves occupy the id range
/// [0, leaf_count) and stay in place across rewind() so the node section can
/// be rebuilt per evaluation chunk.
class Tape {
 public:
  Tape() { head_.push_back(0); }

  int32_t add_leaf(double v) {
    val_.push_back(v);
    head_.push_back(static_cast<int32_t>(argid_.size()));
    return leaf_end_++;
  }

  int32_t leaf_count() const { return leaf_end_; }
  void set_leaf(int32_t i, double v) { val_[static_cast<size_t>(i)] = v; }
  double value(int32_t i) const { return val_[static_cast<size_t>(i)]; }

  /// Drops every node above the leaf section.
  void rewind() {
    val_.resize(static_cast<size_t>(leaf_end_));
    head_.resize(static_cast<size_t>(leaf_end_) + 1);
    argid_.clear();
    argpx_.clear();
  }

  size_t node_count() const { return val_.size(); }

  // Incremental construction of one node; exactly one node may be open.
  int32_t begin_node() { return static_cast<int32_t>(val_.size()); }
  void push_arg(int32_t id, double partial) {
    if (id >= 0) {
      argid_.push_back(id);
      argpx_.push_back(partial);
    }
  }
  int32_t end_node(double v) {
    val_.push_back(v);
    head_.push_back(static_cast<int32_t>(argid_.size()));
    return static_cast<int32_t>(val_.size()) - 1;
  }

  int32_t push1(double v, int32_t a, double pa) {
    begin_node();
    push_arg(a, pa);
    return end_node(v);
  }

  int32_t push2(double v, int32_t a, double pa, int32_t b, double pb) {
    begin_node();
    push_arg(a, pa);
    push_arg(b, pb);
    return end_node(v);
  }

  /// Accumulates seed * d(node)/d(leaf_i) into grad[i] for every leaf.
  void backward_accumulate(int32_t node, double seed, std::span<double> grad) const;

 private:
  std::vector<double> val_;
  mutable std::vector<double> adj_;
  std::vector<int32_t> head_;
  std::vector<int32_t> argid_;
  std::vector<double> argpx_;
  int32_t leaf_end_ = 0;
};

/// Taped scalar. id < 0 marks a constant that lives on no tape; arithmetic on
/// constants folds without recording nodes, so plain numeric literals can mix
/// freely with recorded values inside templated code.
struct Var {
  double v = 0.0;
  int32_t id = -1;

  Var() = default;
  Var(double c) : v(c) {}  // NOLINT: implicit by design
  Var(double value, int32_t node) : v(value), id(node) {}
};

inline Tape& active() { return *detail::active_tape; }

/// Binds a tape as the recording target for Var arithmetic on this thread.
class TapeScope {
 public:
  explicit TapeScope(Tape* t) : previous_(detail::active_tape) { detail::active_tape = t; }
  ~TapeScope() { detail::active_tape = previous_; }
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  Tape* previous_;
};

inline Var operator+(Var a, Var b) {
  double v = a.v + b.v;
  if (a.id < 0 && b.id < 0) return Var(v);
  if (a.id < 0) return Var(v, active().push1(v, b.id, 1.0));
  if (b.id < 0) return Var(v, active().push1(v, a.id, 1.0));
  return Var(v, active().push2(v, a.id, 1.0, b.id, 1.0));
}

inline Var operator-(Var a, Var b) {
  double v = a.v - b.v;
  if (a.id < 0 && b.id < 0) return Var(v);
  if (a.id < 0) return Var(v, active().push1(v, b.id, -1.0));
  if (b.id < 0) return Var(v, active().push1(v, a.id, 1.0));
  return Var(v, active().push2(v, a.id, 1.0, b.id, -1.0));
}

inline Var operator-(Var a) {
  if (a.id < 0) return Var(-a.v);
  return Var(-a.v, active().push1(-a.v, a.id, -1.0));
}

inline Var operator*(Var a, Var b) {
  double v = a.v * b.v;
  if (a.id < 0 && b.id < 0) return Var(v);
  if (a.id < 0) return Var(v, active().push1(v, b.id, a.v));
  if (b.id < 0) return Var(v, active().push1(v, a.id, b.v));
  return Var(v, active().push2(v, a.id, b.v, b.id, a.v));
}

inline Var operator/(Var a, Var b) {
  double v = a.v / b.v;
  if (a.id < 0 && b.id < 0) return Var(v);
  double inv_b = 1.0 / b.v;
  if (a.id < 0) return Var(v, active().push1(v, b.id, -v * inv_b));
  if (b.id < 0) return Var(v, active().push1(v, a.id, inv_b));
  return Var(v, active().push2(v, a.id, inv_b, b.id, -v * inv_b));
}

inline Var tanh(Var a) {
  double t = std::tanh(a.v);
  if (a.id < 0) return Var(t);
  return Var(t, active().push1(t, a.id, 1.0 - t * t));
}

inline Var log(Var a) {
  double v = std::log(a.v);
  if (a.id < 0) return Var(v);
  return Var(v, active().push1(v, a.id, 1.0 / a.v));
}

inline Var exp(Var a) {
  double v = std::exp(a.v);
  if (a.id < 0) return Var(v);
  return Var(v, active().push1(v, a.id, v));
}

inline double softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline Var softplus(Var a) {
  double v = softplus(a.v);
  if (a.id < 0) return Var(v);
  return Var(v, active().push1(v, a.id, logistic(a.v)));
}

inline Var logistic(Var a) {
  double s = logistic(a.v);
  if (a.id < 0) return Var(s);
  return Var(s, active().push1(s, a.id, s * (1.0 - s)));
}

/// sum_i w[i]*x[i] (+ bias) as a single fused node.
inline Var fused_dot(const Var* w, const Var* x, int n, const Var* bias) {
  Tape& t = active();
  t.begin_node();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    s += w[i].v * x[i].v;
    t.push_arg(w[i].id, x[i].v);
    t.push_arg(x[i].id, w[i].v);
  }
  if (bias) {
    s += bias->v;
    t.push_arg(bias->id, 1.0);
  }
  return Var(s, t.end_node(s));
}

inline double fused_dot(const double* w, const double* x, int n, const double* bias) {
  double s = bias ? *bias : 0.0;
  for (int i = 0; i < n; ++i) s += w[i] * x[i];
  return s;
}

/// Evaluates a scalar taped functional of the given parameters and fills the
/// full reverse-mode gradient, sensitivities through any forward-propagated
/// input derivatives included. The functional receives the parameters as
/// leaf Vars with an active tape bound.
template <class F>
double loss_gradient(std::span<const double> theta, F&& functional, std::span<double> grad) {
  Tape tape;
  std::vector<Var> leaves;
  leaves.reserve(theta.size());
  for (double p : theta) leaves.push_back(Var(p, tape.add_leaf(p)));
  TapeScope scope(&tape);
  Var loss = functional(std::span<const Var>(leaves));
  for (double& g : grad) g = 0.0;
  tape.backward_accumulate(loss.id, 1.0, grad);
  return loss.v;
}

/// Chunked reverse mode for losses that are weighted sums of many small
/// independent terms: each term is recorded, swept, and discarded while the
/// parameter leaves persist. Gradients and values accumulate additively.
class LossAccumulator {
 public:
  explicit LossAccumulator(std::span<const double> theta);

  std::span<const Var> theta() const { return theta_vars_; }
  void set_theta(std::span<const double> theta);

  /// Clears node section; call before building the next term.
  void begin_term() { tape_.rewind(); }

  /// Adds weight * term to the running value and gradient.
  void commit(Var term, double weight);

  double value() const;
  std::span<const double> grad() const { return grad_; }
  void reset();

  Tape& tape() { return tape_; }

 private:
  Tape tape_;
  std::vector<Var> theta_vars_;
  std::vector<double> grad_;
  std::vector<double> committed_;  // weighted term values, pairwise-summed
  TapeScope scope_;
};

/// Plain value extraction; pairs with mdem::value_of(double) so templated
/// code can branch on magnitudes of either scalar type.
inline double value_of(Var x) { return x.v; }

}  // namespace mdem::ad
