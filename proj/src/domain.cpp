#include "mdem/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mdem/errors.hpp"

namespace mdem {

namespace {

struct EdgeFrame {
  Vec2 start;
  Vec2 dir;  // unit
  double length;
  Vec2 normal;
};

EdgeFrame edge_frame(const Rect& r, EdgeId edge) {
  switch (edge) {
    case EdgeId::left:
      return {{r.x0, r.y0}, {0.0, 1.0}, r.height(), {-1.0, 0.0}};
    case EdgeId::right:
      return {{r.x1, r.y0}, {0.0, 1.0}, r.height(), {1.0, 0.0}};
    case EdgeId::bottom:
      return {{r.x0, r.y0}, {1.0, 0.0}, r.width(), {0.0, -1.0}};
    case EdgeId::top:
      return {{r.x0, r.y1}, {1.0, 0.0}, r.width(), {0.0, 1.0}};
    default:
      throw DegenerateInput("edge_frame: not a rectangle edge");
  }
}

std::vector<double> open_arc_weights(int n, double arc, BoundaryRule rule) {
  const double h = arc / (n - 1);
  std::vector<double> w(n, h);
  if (rule == BoundaryRule::trapezoid) {
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
  }
  if ((n - 1) % 2 != 0)
    throw SizeMismatch("simpson weights need an even interval count");
  w.assign(n, 0.0);
  for (int i = 0; i + 2 < n; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  return w;
}

BoundarySegment sample_edge_segment(const DomainSpec& spec,
                                    const BoundarySegmentSpec& seg,
                                    int seg_index, int nx, int ny,
                                    BoundaryRule rule) {
  const EdgeFrame frame = edge_frame(spec.rect, seg.edge);
  if (!(seg.t1 > seg.t0) || seg.t0 < 0.0 || seg.t1 > 1.0)
    throw DegenerateInput("boundary segment span must satisfy 0 <= t0 < t1 <= 1");

  const int grid_n =
      (seg.edge == EdgeId::bottom || seg.edge == EdgeId::top) ? nx : ny;
  int n = seg.n_points;
  if (n == 0) {
    n = static_cast<int>(std::lround((seg.t1 - seg.t0) * (grid_n - 1))) + 1;
    n = std::max(n, 2);
  }
  if (n < 2) throw DegenerateInput("boundary segment needs at least 2 points");

  BoundarySegment out;
  out.label = seg.label;
  out.kind = seg.kind;
  out.spec_index = seg_index;
  out.closed = false;
  out.arc_length = (seg.t1 - seg.t0) * frame.length;
  out.points.reserve(n);
  out.normals.assign(n, frame.normal);
  for (int i = 0; i < n; ++i) {
    const double t = seg.t0 + (seg.t1 - seg.t0) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
    const double s = t * frame.length;
    out.points.push_back(
        {frame.start.x + s * frame.dir.x, frame.start.y + s * frame.dir.y});
  }
  out.weights = open_arc_weights(n, out.arc_length, rule);
  return out;
}

BoundarySegment sample_hole_segment(const DomainSpec& spec,
                                    const BoundarySegmentSpec& seg,
                                    int seg_index, int nx, int ny,
                                    BoundaryRule rule) {
  if (seg.hole_index < 0 ||
      seg.hole_index >= static_cast<int>(spec.holes.size()))
    throw DegenerateInput("boundary segment references a missing hole");
  const CircleHole& hole = spec.holes[seg.hole_index];
  if (!(hole.radius > 0.0)) throw DegenerateInput("hole radius must be positive");

  const bool full = seg.t0 == 0.0 && seg.t1 == 1.0;
  if (!full && (!(seg.t1 > seg.t0) || seg.t0 < 0.0 || seg.t1 > 1.0))
    throw DegenerateInput("boundary segment span must satisfy 0 <= t0 < t1 <= 1");

  const double hx = spec.rect.width() / (nx - 1);
  const double hy = spec.rect.height() / (ny - 1);
  const double circumference = 2.0 * std::numbers::pi * hole.radius;

  BoundarySegment out;
  out.label = seg.label;
  out.kind = seg.kind;
  out.spec_index = seg_index;
  out.closed = full;
  out.arc_length = (seg.t1 - seg.t0) * circumference;

  int n = seg.n_points;
  if (n == 0) {
    const double h = std::min(hx, hy);
    n = std::max(8, static_cast<int>(std::lround(out.arc_length / h)));
    if (!full) n += 1;
  }

  auto push_point = [&](double theta) {
    out.points.push_back({hole.center.x + hole.radius * std::cos(theta),
                          hole.center.y + hole.radius * std::sin(theta)});
    out.normals.push_back({-std::cos(theta), -std::sin(theta)});
  };

  if (full) {
    if (n < 3) throw DegenerateInput("closed rim needs at least 3 points");
    for (int i = 0; i < n; ++i)
      push_point(2.0 * std::numbers::pi * static_cast<double>(i) /
                 static_cast<double>(n));
    out.weights.assign(n, out.arc_length / n);
  } else {
    if (n < 2) throw DegenerateInput("boundary segment needs at least 2 points");
    for (int i = 0; i < n; ++i) {
      const double t = seg.t0 + (seg.t1 - seg.t0) * static_cast<double>(i) /
                                    static_cast<double>(n - 1);
      push_point(2.0 * std::numbers::pi * t);
    }
    out.weights = open_arc_weights(n, out.arc_length, rule);
  }
  return out;
}

}  // namespace

DomainSampling sample_grid(const DomainSpec& spec, int nx, int ny,
                           BoundaryRule rule) {
  if (nx < 2 || ny < 2)
    throw EmptyDomain("sample_grid needs at least 2 points per direction");
  if (!(spec.rect.width() > 0.0) || !(spec.rect.height() > 0.0))
    throw DegenerateInput("rectangle must have positive extent");

  DomainSampling out;
  out.nx = nx;
  out.ny = ny;
  out.domain_points.reserve(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    const double y =
        spec.rect.y0 + spec.rect.height() * static_cast<double>(j) / (ny - 1);
    for (int i = 0; i < nx; ++i) {
      const double x =
          spec.rect.x0 + spec.rect.width() * static_cast<double>(i) / (nx - 1);
      bool in_hole = false;
      for (const CircleHole& hole : spec.holes) {
        const double dx = x - hole.center.x;
        const double dy = y - hole.center.y;
        if (dx * dx + dy * dy < hole.radius * hole.radius) {
          in_hole = true;
          break;
        }
      }
      if (!in_hole) out.domain_points.push_back({x, y});
    }
  }
  if (out.domain_points.empty())
    throw EmptyDomain("all grid points fall inside holes");

  out.segments.reserve(spec.segments.size());
  for (size_t k = 0; k < spec.segments.size(); ++k) {
    const BoundarySegmentSpec& seg = spec.segments[k];
    if (seg.edge == EdgeId::hole)
      out.segments.push_back(
          sample_hole_segment(spec, seg, static_cast<int>(k), nx, ny, rule));
    else
      out.segments.push_back(
          sample_edge_segment(spec, seg, static_cast<int>(k), nx, ny, rule));
  }
  return out;
}

Vec2 outward_normal(const DomainSpec& spec, Vec2 p) {
  constexpr double tol = 1e-9;
  const Rect& r = spec.rect;
  const bool in_y = p.y >= r.y0 - tol && p.y <= r.y1 + tol;
  const bool in_x = p.x >= r.x0 - tol && p.x <= r.x1 + tol;
  if (in_y && std::abs(p.x - r.x0) <= tol) return {-1.0, 0.0};
  if (in_y && std::abs(p.x - r.x1) <= tol) return {1.0, 0.0};
  if (in_x && std::abs(p.y - r.y0) <= tol) return {0.0, -1.0};
  if (in_x && std::abs(p.y - r.y1) <= tol) return {0.0, 1.0};
  for (const CircleHole& hole : spec.holes) {
    const double dx = p.x - hole.center.x;
    const double dy = p.y - hole.center.y;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (std::abs(d - hole.radius) <= tol && d > 0.0)
      return {-dx / d, -dy / d};
  }
  throw PointOffBoundary("outward_normal: point is not on the boundary");
}

}  // namespace mdem
