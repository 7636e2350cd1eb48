#pragma once

#include <deque>
#include <functional>
#include <span>
#include <vector>

namespace mdem {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected first-order moments, full-batch.
class Adam {
 public:
  Adam(AdamConfig cfg, size_t n) : cfg_(cfg), m_(n, 0.0), v_(n, 0.0) {}
  void step(std::span<double> theta, std::span<const double> grad);

 private:
  AdamConfig cfg_;
  std::vector<double> m_, v_;
  long t_ = 0;
};

struct LbfgsConfig {
  int memory = 20;
  double c1 = 1e-4;   // sufficient decrease
  double c2 = 0.9;    // curvature
  double first_step = 1.0;  // trial step length of the very first iteration
  int max_line_evals = 40;
};

/// Limited-memory BFGS with a strong Wolfe line search (bracket and zoom).
/// When the two-loop direction fails to point downhill the step falls back
/// to steepest descent and the event is counted.
class Lbfgs {
 public:
  using Objective =
      std::function<double(std::span<const double>, std::span<double>)>;

  Lbfgs(LbfgsConfig cfg, size_t n) : cfg_(cfg), n_(n) {}

  struct Step {
    double f = 0.0;
    double alpha = 0.0;
    bool made_progress = false;
    int evals = 0;
  };

  /// One accepted iterate: updates x, f, and g in place. made_progress is
  /// false when no step with a lower objective could be found.
  Step iterate(std::vector<double>& x, double& f, std::vector<double>& g,
               const Objective& obj);

  int fallback_count() const { return fallbacks_; }

 private:
  LbfgsConfig cfg_;
  size_t n_;
  std::deque<std::vector<double>> s_hist_, y_hist_;
  std::deque<double> rho_hist_;
  bool first_ = true;
  int fallbacks_ = 0;
  std::vector<double> d_, x_trial_, g_trial_, g_best_;

  void direction(std::span<const double> g, std::vector<double>& d) const;
};

}  // namespace mdem
