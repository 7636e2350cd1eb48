#pragma once

#include <vector>

#include "mdem/delaunay.hpp"
#include "mdem/domain.hpp"
#include "mdem/material.hpp"
#include "mdem/network.hpp"
#include "mdem/tape.hpp"
#include "mdem/tensor.hpp"
#include "mdem/transform.hpp"

namespace mdem {

enum class Formulation { pinn, dem, mdem };

struct LossWeights {
  double w_r = 1.0;  // strong-form residual
  double w_t = 1.0;  // boundary traction mismatch
  double w_u = 1.0;  // boundary displacement data (trained transforms)
  double w_p = 1.0;  // stress-head consistency
};

struct LossBreakdown {
  double total = 0.0;
  double pi = 0.0;
  double mse_r = 0.0;
  double mse_t = 0.0;
  double mse_u = 0.0;
  double mse_p = 0.0;
  double penalty = 0.0;
};

struct TractionSample {
  Vec2 X{};
  Vec2 N{};
  Vec2 tbar{};
  double w = 0.0;
};

struct DirichletSample {
  Vec2 X{};
  Vec2 ubar{};
  double w = 0.0;
  bool fix_x = true;
  bool fix_y = true;
};

/// Everything a loss evaluation consumes: collocation points with their
/// vertex quadrature weights, boundary samples, material, and the inverted-
/// configuration guard. Points whose det F drops to j_floor or below trade
/// their term for penalty_scale * (det F - j_floor)^2.
struct ProblemDefinition {
  MaterialParams material{};
  std::vector<Vec2> domain_points;
  std::vector<double> domain_weights;
  std::vector<TractionSample> tractions;
  std::vector<DirichletSample> dirichlet;
  double j_floor = 1e-3;
  double penalty_scale = 1e3;
};

/// Evaluates boundary expressions and attaches quadrature weights. The
/// triangulation must come from the same sampling (vertex order is shared).
ProblemDefinition assemble_problem(const DomainSpec& spec,
                                   const DomainSampling& sampling,
                                   const Triangulation& tri,
                                   MaterialParams material);

/// Taped loss evaluation: commits every per-point term into the accumulator
/// (value and parameter gradient) and returns the breakdown. The stress-head
/// formulation requires output width 6; the others ignore a head if present.
LossBreakdown accumulate_loss(Formulation form, const NetworkShape& shape,
                              Activation act, const OutputTransform& tf,
                              const ProblemDefinition& prob,
                              const LossWeights& weights,
                              ad::LossAccumulator& acc);

/// Tape-free loss evaluation; same arithmetic, values only.
LossBreakdown loss_value(Formulation form, const NetworkParams& params,
                         const OutputTransform& tf,
                         const ProblemDefinition& prob,
                         const LossWeights& weights);

/// Mean squared boundary mismatch of the constitutive traction P(F) N,
/// reported as a diagnostic for formulations that never train on it.
double traction_mismatch(const NetworkParams& params, const OutputTransform& tf,
                         const ProblemDefinition& prob);

/// Displacement, stress, and energy density at the collocation points. The
/// stress-head formulation exports the head, the others the constitutive
/// stress.
struct FieldSnapshot {
  std::vector<Vec2> X;
  std::vector<Vec2> u;
  std::vector<Mat2> P;
  std::vector<double> psi;
};

FieldSnapshot snapshot_fields(Formulation form, const NetworkParams& params,
                              const OutputTransform& tf,
                              const ProblemDefinition& prob);

}  // namespace mdem
