#pragma once

#include <vector>

#include "mdem/losses.hpp"
#include "mdem/network.hpp"
#include "mdem/optimizers.hpp"

namespace mdem {

struct TrainConfig {
  int adam_iters = 0;
  AdamConfig adam{};
  int lbfgs_iters = 0;
  LbfgsConfig lbfgs{};
  double stop_rel = 1e-9;  // relative loss change below this ...
  int stop_window = 10;    // ... for this many consecutive iterates stops
  int log_every = 10;
};

struct HistoryRow {
  int iter = 0;
  LossBreakdown loss{};
  char phase = 'a';  // 'a' adam, 'l' lbfgs
};

struct TrainResult {
  std::vector<double> theta;
  std::vector<HistoryRow> history;
  LossBreakdown final_loss{};
  int iters_run = 0;
  int lbfgs_fallbacks = 0;
  bool stopped_early = false;
};

/// Full-batch training: an Adam warmup followed by L-BFGS, with loss
/// history rows every log_every iterations plus the first and last.
TrainResult train(Formulation form, const NetworkShape& shape, Activation act,
                  const OutputTransform& tf, const ProblemDefinition& prob,
                  const LossWeights& weights, const TrainConfig& tc,
                  std::vector<double> theta0);

}  // namespace mdem
