#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdem/domain.hpp"
#include "mdem/losses.hpp"
#include "mdem/material.hpp"
#include "mdem/network.hpp"
#include "mdem/train.hpp"
#include "mdem/transform.hpp"

namespace mdem {

struct FemSchedule {
  int load_steps = 1;
  double tol_r = 1e-9;
};

/// Everything one benchmark run needs, resolved from a config file.
struct RunConfig {
  std::string method = "mdem";  // pinn | dem | mdem | fem
  std::string output_dir;
  MaterialParams material{};
  DomainSpec domain{};
  int nx = 0;
  int ny = 0;
  BoundaryRule rule = BoundaryRule::trapezoid;
  std::vector<int> widths;
  Activation activation = Activation::tanh_fn;
  uint64_t seed = 1;
  TrainConfig schedule{};
  LossWeights weights{};
  double j_floor = 1e-3;
  double penalty_scale = 1e3;
  OutputTransform transform{};
  FemSchedule fem{};
};

/// Parse and validate config text in a strict TOML subset: [section] and
/// [[bc]] tables, `key = value` pairs with strings, numbers, booleans, and
/// flat arrays, # comments. Unknown sections or keys are rejected. The
/// optional profile name applies [profile.<name>.*] overlay tables on top
/// of the base values. Throws ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& text,
                           const std::string& profile = "");

/// parse_run_config on the contents of the file at path.
RunConfig load_run_config(const std::string& path,
                          const std::string& profile = "");

}  // namespace mdem
