#pragma once

#include <array>
#include <vector>

#include "mdem/domain.hpp"
#include "mdem/tensor.hpp"

namespace mdem {

/// Triangle soup over the domain points. Triangles are CCW index triples
/// into `vertices`; `areas[j]` is the (positive) area of triangle j.
struct Triangulation {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> areas;
  double total_area = 0.0;
};

/// Delaunay triangulation of a point set by incremental insertion.
/// Throws DegenerateInput for fewer than 3 points, all-collinear input,
/// or duplicate points.
Triangulation delaunay(const std::vector<Vec2>& points);

/// Delaunay triangulation of the sampled domain points, with triangles
/// whose centroid falls inside a hole removed, plus a relative area floor
/// against slivers. Throws EmptyDomain if nothing survives.
Triangulation triangulate(const DomainSampling& sampling,
                          const DomainSpec& spec);

}  // namespace mdem
