#pragma once

#include <array>
#include <string>
#include <vector>

#include "mdem/expression.hpp"
#include "mdem/tensor.hpp"

namespace mdem {

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct CircleHole {
  Vec2 center{};
  double radius = 0.0;
};

enum class BcKind { dirichlet, traction, free_edge };

enum class EdgeId { left, right, bottom, top, hole };

/// One labeled piece of the boundary. Rectangle edges are parametrized from
/// their minimum corner with span fractions in [0, 1]; hole rims are
/// parametrized by angle fraction theta / 2pi.
struct BoundarySegmentSpec {
  std::string label;
  EdgeId edge = EdgeId::left;
  int hole_index = 0;
  double t0 = 0.0;
  double t1 = 1.0;
  BcKind kind = BcKind::free_edge;
  std::array<Expr, 2> traction{Expr::constant(0.0), Expr::constant(0.0)};
  std::array<Expr, 2> dirichlet_value{Expr::constant(0.0), Expr::constant(0.0)};
  std::string components = "xy";  // which displacement components are prescribed
  int n_points = 0;               // 0: match the grid spacing
};

struct DomainSpec {
  Rect rect;
  std::vector<CircleHole> holes;
  std::vector<BoundarySegmentSpec> segments;
};

enum class BoundaryRule { trapezoid, simpson };

/// Sampled boundary segment: ordered points, outward unit normals, and
/// quadrature weights summing to the segment arc length.
struct BoundarySegment {
  std::string label;
  BcKind kind = BcKind::free_edge;
  int spec_index = -1;
  bool closed = false;
  double arc_length = 0.0;
  std::vector<Vec2> points;
  std::vector<Vec2> normals;
  std::vector<double> weights;
};

/// Collocation points of the domain (uniform grid with hole interiors
/// removed, outer-edge points included) plus per-segment boundary samplings.
struct DomainSampling {
  std::vector<Vec2> domain_points;
  std::vector<BoundarySegment> segments;
  int nx = 0;
  int ny = 0;
};

/// Uniform nx-by-ny point grid over the rectangle (edge points included);
/// points strictly inside a hole are dropped. Boundary segments get
/// n_points samples (grid-matched by default) with trapezoid or Simpson
/// weights.
DomainSampling sample_grid(const DomainSpec& spec, int nx, int ny,
                           BoundaryRule rule = BoundaryRule::trapezoid);

/// Outward unit normal of the boundary curve passing through p; hole rims
/// point into the hole. Throws PointOffBoundary beyond 1e-9 distance.
Vec2 outward_normal(const DomainSpec& spec, Vec2 p);

}  // namespace mdem
