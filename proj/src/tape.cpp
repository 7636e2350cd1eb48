#include "mdem/tape.hpp"

#include "mdem/numeric.hpp"

namespace mdem::ad {

void Tape::backward_accumulate(int32_t node, double seed, std::span<double> grad) const {
  if (node < 0) return;  // constant: no dependence on leaves
  if (node < leaf_end_) {
    grad[static_cast<size_t>(node)] += seed;
    return;
  }
  size_t top = val_.size();
  if (adj_.size() < top) adj_.resize(top);
  for (size_t i = static_cast<size_t>(leaf_end_); i < top; ++i) adj_[i] = 0.0;
  adj_[static_cast<size_t>(node)] = seed;
  for (int32_t i = node; i >= leaf_end_; --i) {
    double a = adj_[static_cast<size_t>(i)];
    if (a == 0.0) continue;
    int32_t begin = head_[static_cast<size_t>(i)];
    int32_t end = head_[static_cast<size_t>(i) + 1];
    for (int32_t k = begin; k < end; ++k) {
      int32_t j = argid_[static_cast<size_t>(k)];
      double contribution = a * argpx_[static_cast<size_t>(k)];
      if (j < leaf_end_)
        grad[static_cast<size_t>(j)] += contribution;
      else
        adj_[static_cast<size_t>(j)] += contribution;
    }
  }
}

LossAccumulator::LossAccumulator(std::span<const double> theta) : scope_(&tape_) {
  theta_vars_.reserve(theta.size());
  for (double p : theta) theta_vars_.push_back(Var(p, tape_.add_leaf(p)));
  grad_.assign(theta.size(), 0.0);
}

void LossAccumulator::set_theta(std::span<const double> theta) {
  tape_.rewind();
  for (size_t i = 0; i < theta.size(); ++i) {
    tape_.set_leaf(static_cast<int32_t>(i), theta[i]);
    theta_vars_[i].v = theta[i];
  }
  reset();
}

void LossAccumulator::commit(Var term, double weight) {
  committed_.push_back(weight * term.v);
  tape_.backward_accumulate(term.id, weight, grad_);
}

double LossAccumulator::value() const { return pairwise_sum(committed_); }

void LossAccumulator::reset() {
  for (double& g : grad_) g = 0.0;
  committed_.clear();
}

}  // namespace mdem::ad
