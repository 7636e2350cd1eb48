#pragma once

#include <Eigen/Sparse>
#include <array>
#include <span>
#include <vector>

#include "mdem/delaunay.hpp"
#include "mdem/domain.hpp"
#include "mdem/losses.hpp"
#include "mdem/material.hpp"
#include "mdem/tensor.hpp"

namespace mdem::fem {

/// Prescribed displacement component at one node. `value` is the target at
/// full load; the solver ramps it with the load factor.
struct NodalConstraint {
  int node = 0;
  int component = 0;  // 0: x, 1: y
  double value = 0.0;
};

/// Boundary mesh edge (nodes a, b) carrying a dead-load traction over the
/// sub-interval [sa, sb] of the edge parameter, with nominal traction values
/// ta, tb at the sub-interval ends. A full edge has sa = 0, sb = 1.
struct TractionEdge {
  int a = 0;
  int b = 0;
  double sa = 0.0;
  double sb = 1.0;
  Vec2 ta{};
  Vec2 tb{};
};

/// Linear-triangle mesh with boundary conditions resolved to nodes and
/// edges. Nodes and elements alias the triangulation they were built from.
struct FemMesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> elements;
  std::vector<NodalConstraint> constraints;
  std::vector<TractionEdge> tractions;
};

/// One Newton iteration: load factor of the step, iteration index within
/// the step, and the free-DOF residual norm before the update.
struct NewtonRecord {
  double load_factor = 0.0;
  int iteration = 0;
  double residual = 0.0;
};

struct FemSolution {
  FemMesh mesh;
  std::vector<double> u;     // interleaved (ux, uy) per node
  std::vector<Mat2> F;       // per element
  std::vector<Mat2> P;       // per element
  std::vector<double> psi;   // per element
  std::vector<NewtonRecord> log;
  double potential = 0.0;
};

struct FemSample {
  Vec2 u{};
  Mat2 P{};
};

/// Mesh over the shared triangulation with the spec's boundary segments
/// attached: dirichlet segments constrain the nodes lying on them, traction
/// segments load the boundary edges they cover (clipped to the segment's
/// parameter span). Throws DegenerateInput when no node ends up constrained.
FemMesh build_fem_mesh(const DomainSpec& spec, const Triangulation& tri);

/// Consistent nodal force vector of the mesh tractions at unit load factor,
/// by the trapezoid rule along each loaded edge piece.
std::vector<double> external_force(const FemMesh& mesh);

/// Residual (internal minus load_factor times external force) and tangent
/// stiffness at displacement state u, over all DOFs; constraints are not
/// applied here. Throws NonPositiveJacobian when an element inverts.
void assemble_residual_and_tangent(const FemMesh& mesh,
                                   const MaterialParams& mat,
                                   std::span<const double> u,
                                   std::vector<double>& residual,
                                   Eigen::SparseMatrix<double>& tangent,
                                   double load_factor = 1.0);

/// Strain energy minus external work of displacement state u.
double potential_energy(const FemMesh& mesh, const MaterialParams& mat,
                        std::span<const double> u, double load_factor = 1.0);

/// Incremental-load Newton solve. Each step converges the free-DOF residual
/// to tol_r relative to its first-iteration norm; a step that diverges or
/// inverts an element is bisected, at most five times in total, before
/// NoConvergence is thrown.
FemSolution solve_static(const FemMesh& mesh, const MaterialParams& mat,
                         int load_steps = 1, double tol_r = 1e-9);

/// Displacement by barycentric interpolation and the containing element's
/// constant stress at each query point. Throws PointOutsideMesh.
std::vector<FemSample> sample_solution(const FemSolution& sol,
                                       std::span<const Vec2> queries);

/// Per-node fields: nodal displacements plus stress and energy density
/// recovered by area-weighted averaging of the incident elements.
FieldSnapshot nodal_fields(const FemSolution& sol);

}  // namespace mdem::fem
