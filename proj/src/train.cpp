#include "mdem/train.hpp"

#include <algorithm>
#include <cmath>

namespace mdem {

TrainResult train(Formulation form, const NetworkShape& shape, Activation act,
                  const OutputTransform& tf, const ProblemDefinition& prob,
                  const LossWeights& weights, const TrainConfig& tc,
                  std::vector<double> theta0) {
  const size_t n = theta0.size();
  ad::LossAccumulator acc(theta0);

  LossBreakdown last_eval;
  auto objective = [&](std::span<const double> th,
                       std::span<double> gout) -> double {
    acc.set_theta(th);
    last_eval = accumulate_loss(form, shape, act, tf, prob, weights, acc);
    std::copy(acc.grad().begin(), acc.grad().end(), gout.begin());
    return last_eval.total;
  };

  TrainResult res;
  res.theta = std::move(theta0);
  std::vector<double> g(n);

  int iter = 0;
  int last_logged = -1;
  auto log_row = [&](char phase, const LossBreakdown& b, bool force) {
    if (iter == last_logged) return;
    if (force || tc.log_every <= 1 || iter % tc.log_every == 0) {
      res.history.push_back({iter, b, phase});
      last_logged = iter;
    }
  };

  double prev_f = 0.0;
  bool have_prev = false;
  int calm = 0;
  auto stop_now = [&](double f) {
    if (have_prev) {
      const double rel = std::abs(f - prev_f) / std::max(1.0, std::abs(f));
      calm = rel < tc.stop_rel ? calm + 1 : 0;
    }
    prev_f = f;
    have_prev = true;
    return calm >= tc.stop_window;
  };

  Adam adam(tc.adam, n);
  for (int it = 0; it < tc.adam_iters; ++it) {
    const double f = objective(res.theta, g);
    log_row('a', last_eval, it == 0);
    if (stop_now(f)) {
      res.stopped_early = true;
      break;
    }
    adam.step(res.theta, g);
    ++iter;
  }

  if (tc.lbfgs_iters > 0 && !res.stopped_early) {
    calm = 0;
    have_prev = false;
    Lbfgs lbfgs(tc.lbfgs, n);
    double f = objective(res.theta, g);
    LossBreakdown accepted = last_eval;
    log_row('l', accepted, true);
    for (int it = 0; it < tc.lbfgs_iters; ++it) {
      const Lbfgs::Step step = lbfgs.iterate(res.theta, f, g, objective);
      if (!step.made_progress) {
        res.stopped_early = true;
        break;
      }
      // The line search may have probed past the accepted point; recover
      // the matching breakdown for the history row.
      if (last_eval.total != step.f) {
        acc.set_theta(res.theta);
        last_eval = accumulate_loss(form, shape, act, tf, prob, weights, acc);
      }
      accepted = last_eval;
      ++iter;
      log_row('l', accepted, it + 1 == tc.lbfgs_iters);
      if (stop_now(f)) {
        res.stopped_early = true;
        break;
      }
    }
    res.lbfgs_fallbacks = lbfgs.fallback_count();
  }

  std::vector<double> gfin(n);
  objective(res.theta, gfin);
  res.final_loss = last_eval;
  log_row(tc.lbfgs_iters > 0 ? 'l' : 'a', res.final_loss, true);
  res.iters_run = iter;
  return res;
}

}  // namespace mdem
