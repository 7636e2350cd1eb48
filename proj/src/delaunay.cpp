#include "mdem/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "mdem/errors.hpp"
#include "mdem/numeric.hpp"

namespace mdem {

namespace {

long double orient_ld(Vec2 a, Vec2 b, Vec2 c) {
  const long double abx = static_cast<long double>(b.x) - a.x;
  const long double aby = static_cast<long double>(b.y) - a.y;
  const long double acx = static_cast<long double>(c.x) - a.x;
  const long double acy = static_cast<long double>(c.y) - a.y;
  return abx * acy - aby * acx;
}

// > 0: p strictly inside the circumcircle of CCW triangle (a, b, c).
long double incircle_ld(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  const long double ax = static_cast<long double>(a.x) - p.x;
  const long double ay = static_cast<long double>(a.y) - p.y;
  const long double bx = static_cast<long double>(b.x) - p.x;
  const long double by = static_cast<long double>(b.y) - p.y;
  const long double cx = static_cast<long double>(c.x) - p.x;
  const long double cy = static_cast<long double>(c.y) - p.y;
  const long double a2 = ax * ax + ay * ay;
  const long double b2 = bx * bx + by * by;
  const long double c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) +
         a2 * (bx * cy - by * cx);
}

// Incremental Bowyer-Watson over a super-triangle, with walking point
// location and a cavity grown by breadth-first circumcircle tests.
class BowyerWatson {
 public:
  explicit BowyerWatson(const std::vector<Vec2>& points) : verts_(points) {
    double lo_x = points[0].x, hi_x = points[0].x;
    double lo_y = points[0].y, hi_y = points[0].y;
    for (const Vec2& p : points) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    const double cx = 0.5 * (lo_x + hi_x);
    const double cy = 0.5 * (lo_y + hi_y);
    const double diag = std::hypot(hi_x - lo_x, hi_y - lo_y);
    const double s = 50.0 * (diag + 1.0);
    const int n = static_cast<int>(points.size());
    verts_.push_back({cx + 2.0 * s, cy - s});
    verts_.push_back({cx, cy + 2.0 * s});
    verts_.push_back({cx - 2.0 * s, cy - s});
    tris_.push_back({{n, n + 1, n + 2}, {-1, -1, -1}, true});
    mark_.push_back(0);
    for (int i = 0; i < n; ++i) insert(i);
  }

  Triangulation extract(int point_count) const {
    Triangulation out;
    out.vertices.assign(verts_.begin(), verts_.begin() + point_count);
    for (const Tri& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= point_count || t.v[1] >= point_count ||
          t.v[2] >= point_count)
        continue;
      out.triangles.push_back({t.v[0], t.v[1], t.v[2]});
    }
    return out;
  }

 private:
  struct Tri {
    std::array<int, 3> v;    // CCW
    std::array<int, 3> adj;  // adj[k] faces edge (v[k], v[k+1])
    bool alive;
  };

  struct BoundaryEdge {
    int a, b;
    int outer;
  };

  std::vector<Vec2> verts_;
  std::vector<Tri> tris_;
  std::vector<uint32_t> mark_;
  std::vector<int> free_;
  std::vector<int> cavity_, stack_;
  std::vector<BoundaryEdge> loop_;
  uint32_t epoch_ = 0;
  uint64_t rng_ = 0x9e3779b97f4a7c15ull;
  int hint_ = 0;

  uint32_t next_random() {
    rng_ = rng_ * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<uint32_t>(rng_ >> 33);
  }

  int alloc() {
    if (!free_.empty()) {
      const int t = free_.back();
      free_.pop_back();
      tris_[t].alive = true;
      return t;
    }
    tris_.push_back({{0, 0, 0}, {-1, -1, -1}, true});
    mark_.push_back(0);
    return static_cast<int>(tris_.size()) - 1;
  }

  bool contains(int t, Vec2 p) const {
    const Tri& tr = tris_[t];
    for (int k = 0; k < 3; ++k)
      if (orient_ld(verts_[tr.v[k]], verts_[tr.v[(k + 1) % 3]], p) < 0.0L)
        return false;
    return true;
  }

  int locate(Vec2 p) {
    int t = hint_;
    if (t < 0 || t >= static_cast<int>(tris_.size()) || !tris_[t].alive)
      t = first_alive();
    const int cap = 4 * static_cast<int>(tris_.size()) + 64;
    for (int step = 0; step < cap; ++step) {
      const Tri& tr = tris_[t];
      const int s = static_cast<int>(next_random() % 3u);
      int next = -1;
      for (int q = 0; q < 3; ++q) {
        const int k = (s + q) % 3;
        if (orient_ld(verts_[tr.v[k]], verts_[tr.v[(k + 1) % 3]], p) < 0.0L) {
          next = tr.adj[k];
          break;
        }
      }
      if (next == -1) {
        bool inside = true;
        for (int k = 0; k < 3 && inside; ++k)
          if (orient_ld(verts_[tr.v[k]], verts_[tr.v[(k + 1) % 3]], p) < 0.0L)
            inside = false;
        if (inside) return t;
        break;  // walked off the hull, fall through to the scan
      }
      t = next;
    }
    for (int j = 0; j < static_cast<int>(tris_.size()); ++j)
      if (tris_[j].alive && contains(j, p)) return j;
    throw DegenerateInput("delaunay: point location failed");
  }

  int first_alive() const {
    for (int j = static_cast<int>(tris_.size()) - 1; j >= 0; --j)
      if (tris_[j].alive) return j;
    throw DegenerateInput("delaunay: no triangles");
  }

  void insert(int pi) {
    const Vec2 p = verts_[pi];
    const int t0 = locate(p);
    for (const int v : tris_[t0].v)
      if (verts_[v].x == p.x && verts_[v].y == p.y)
        throw DegenerateInput("delaunay: duplicate point");

    ++epoch_;
    cavity_.clear();
    stack_.clear();
    stack_.push_back(t0);
    mark_[t0] = epoch_;
    while (!stack_.empty()) {
      const int t = stack_.back();
      stack_.pop_back();
      cavity_.push_back(t);
      for (const int nb : tris_[t].adj) {
        if (nb == -1 || mark_[nb] == epoch_) continue;
        const Tri& tn = tris_[nb];
        if (incircle_ld(verts_[tn.v[0]], verts_[tn.v[1]], verts_[tn.v[2]], p) >
            0.0L) {
          mark_[nb] = epoch_;
          stack_.push_back(nb);
        }
      }
    }

    // The cavity must be star-shaped from p; with inexact predicates a
    // boundary edge can face away from p, in which case the triangle
    // behind it is pulled into the cavity and the loop is rebuilt.
    for (int repair = 0;; ++repair) {
      if (repair > 64)
        throw DegenerateInput("delaunay: cavity repair did not settle");
      loop_.clear();
      bool bad = false;
      for (size_t ci = 0; ci < cavity_.size() && !bad; ++ci) {
        const Tri& tr = tris_[cavity_[ci]];
        for (int k = 0; k < 3; ++k) {
          const int nb = tr.adj[k];
          if (nb != -1 && mark_[nb] == epoch_) continue;
          const int a = tr.v[k];
          const int b = tr.v[(k + 1) % 3];
          if (orient_ld(verts_[a], verts_[b], p) <= 0.0L) {
            if (nb == -1)
              throw DegenerateInput("delaunay: point outside the super-triangle");
            mark_[nb] = epoch_;
            cavity_.push_back(nb);
            bad = true;
            break;
          }
          loop_.push_back({a, b, nb});
        }
      }
      if (!bad) break;
    }

    for (const int t : cavity_) {
      tris_[t].alive = false;
      free_.push_back(t);
    }

    // One new triangle (p, a, b) per boundary edge; edge slots are
    // (p,a), (a,b), (b,p). Consecutive fan triangles share (b,p)/(p,a).
    std::vector<std::pair<int, int>> first_vertex;  // a -> new triangle
    first_vertex.reserve(loop_.size());
    std::vector<int> created;
    created.reserve(loop_.size());
    for (const BoundaryEdge& e : loop_) {
      const int t = alloc();
      tris_[t].v = {pi, e.a, e.b};
      tris_[t].adj = {-1, e.outer, -1};
      if (e.outer != -1) {
        Tri& out = tris_[e.outer];
        for (int k = 0; k < 3; ++k)
          if (out.v[k] == e.b && out.v[(k + 1) % 3] == e.a) out.adj[k] = t;
      }
      first_vertex.emplace_back(e.a, t);
      created.push_back(t);
    }
    for (const int t : created) {
      const int b = tris_[t].v[2];
      for (const auto& [a, s] : first_vertex) {
        if (a == b) {
          tris_[t].adj[2] = s;
          tris_[s].adj[0] = t;
          break;
        }
      }
    }
    hint_ = created.empty() ? first_alive() : created.back();
  }
};

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

}  // namespace

Triangulation delaunay(const std::vector<Vec2>& points) {
  if (points.size() < 3)
    throw DegenerateInput("delaunay needs at least 3 points");
  BowyerWatson bw(points);
  Triangulation out = bw.extract(static_cast<int>(points.size()));
  if (out.triangles.empty())
    throw DegenerateInput("delaunay: input points are collinear");
  out.areas.reserve(out.triangles.size());
  for (const auto& t : out.triangles)
    out.areas.push_back(triangle_area(out.vertices[t[0]], out.vertices[t[1]],
                                      out.vertices[t[2]]));
  out.total_area = pairwise_sum(out.areas);
  return out;
}

Triangulation triangulate(const DomainSampling& sampling,
                          const DomainSpec& spec) {
  Triangulation raw = delaunay(sampling.domain_points);

  double mean_area = 0.0;
  for (const double a : raw.areas) mean_area += std::abs(a);
  mean_area /= static_cast<double>(raw.areas.size());
  const double floor = 1e-12 * mean_area;

  Triangulation out;
  out.vertices = raw.vertices;
  for (size_t j = 0; j < raw.triangles.size(); ++j) {
    if (!(raw.areas[j] > floor)) continue;
    const auto& t = raw.triangles[j];
    const Vec2 centroid{(out.vertices[t[0]].x + out.vertices[t[1]].x +
                         out.vertices[t[2]].x) /
                            3.0,
                        (out.vertices[t[0]].y + out.vertices[t[1]].y +
                         out.vertices[t[2]].y) /
                            3.0};
    bool in_hole = false;
    for (const CircleHole& hole : spec.holes) {
      const double dx = centroid.x - hole.center.x;
      const double dy = centroid.y - hole.center.y;
      if (dx * dx + dy * dy < hole.radius * hole.radius) {
        in_hole = true;
        break;
      }
    }
    if (in_hole) continue;
    out.triangles.push_back(t);
    out.areas.push_back(raw.areas[j]);
  }
  if (out.triangles.empty())
    throw EmptyDomain("triangulate: no triangles survive the hole filter");
  out.total_area = pairwise_sum(out.areas);
  return out;
}

}  // namespace mdem
