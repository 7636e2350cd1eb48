#pragma once

#include <span>

namespace mdem {

/// Pairwise (cascade) summation; deterministic for a fixed element order and
/// insensitive to permutations up to ~1e-15 relative for well-scaled data.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace mdem
