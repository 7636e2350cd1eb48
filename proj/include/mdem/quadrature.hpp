#pragma once

#include <span>
#include <vector>

#include "mdem/delaunay.hpp"
#include "mdem/domain.hpp"

namespace mdem {

/// Integral of a nodal field over the triangulated domain with the
/// vertex-mean rule: each triangle contributes its area times the mean of
/// its three vertex values. Throws SizeMismatch unless f has one value
/// per vertex.
double integrate_domain(const Triangulation& tri, std::span<const double> f);

/// Boundary line integral: sum of weights[i] * g[i]. Throws SizeMismatch
/// unless g has one value per segment point.
double integrate_boundary(const BoundarySegment& seg,
                          std::span<const double> g);

/// Per-vertex weights of the vertex-mean rule, w_v = sum of area/3 over
/// incident triangles, so integrate_domain(f) == sum_v w_v f_v.
std::vector<double> vertex_quadrature_weights(const Triangulation& tri);

}  // namespace mdem
