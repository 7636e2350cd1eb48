#include "mdem/network.hpp"

#include <cmath>
#include <random>

namespace mdem {

ActivationTraits activation_traits(Activation act) {
  switch (act) {
    case Activation::tanh_fn:
    case Activation::softplus_fn:
      return {true};
  }
  return {false};
}

int64_t NetworkShape::param_count() const {
  int64_t n = 0;
  for (size_t l = 0; l + 1 < widths.size(); ++l)
    n += static_cast<int64_t>(widths[l]) * widths[l + 1] + widths[l + 1];
  return n;
}

namespace {
// Platform-independent uniform [0, 1): top 53 bits of the generator output.
double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}
}  // namespace

NetworkParams init_network(const std::vector<int>& widths, Activation act, uint64_t seed) {
  if (widths.size() < 2) throw BadArchitecture("init_network: need at least input and output layer");
  if (widths[0] != 2) throw BadArchitecture("init_network: input width must be 2");
  for (int w : widths)
    if (w < 1) throw BadArchitecture("init_network: widths must be positive");

  NetworkParams params;
  params.shape.widths = widths;
  params.activation = act;
  params.theta.resize(static_cast<size_t>(params.shape.param_count()));

  std::mt19937_64 gen(seed);
  size_t offset = 0;
  for (size_t l = 0; l + 1 < widths.size(); ++l) {
    int fan_in = widths[l];
    int fan_out = widths[l + 1];
    double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (int i = 0; i < fan_out * fan_in; ++i)
      params.theta[offset++] = (2.0 * unit_uniform(gen) - 1.0) * limit;
    for (int i = 0; i < fan_out; ++i) params.theta[offset++] = 0.0;
  }
  return params;
}

}  // namespace mdem
