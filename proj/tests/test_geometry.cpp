#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mdem/delaunay.hpp"
#include "mdem/domain.hpp"
#include "mdem/errors.hpp"
#include "mdem/quadrature.hpp"

using namespace mdem;

namespace {

DomainSpec unit_square() {
  DomainSpec spec;
  spec.rect = {0.0, 0.0, 1.0, 1.0};
  return spec;
}

BoundarySegmentSpec edge_segment(EdgeId edge, double t0 = 0.0, double t1 = 1.0,
                                 int n_points = 0) {
  BoundarySegmentSpec seg;
  seg.label = "seg";
  seg.edge = edge;
  seg.t0 = t0;
  seg.t1 = t1;
  seg.kind = BcKind::traction;
  seg.n_points = n_points;
  return seg;
}

double quadratic_error(int n) {
  DomainSampling s = sample_grid(unit_square(), n, n);
  Triangulation tri = triangulate(s, unit_square());
  std::vector<double> f(tri.vertices.size());
  for (size_t i = 0; i < f.size(); ++i)
    f[i] = tri.vertices[i].x * tri.vertices[i].x;
  return std::abs(integrate_domain(tri, f) - 1.0 / 3.0);
}

}  // namespace

TEST_CASE("3x3 grid of the unit square gives the 9 half-integer points") {
  DomainSampling s = sample_grid(unit_square(), 3, 3);
  REQUIRE(s.domain_points.size() == 9);
  for (const Vec2& p : s.domain_points) {
    CHECK((p.x == 0.0 || p.x == 0.5 || p.x == 1.0));
    CHECK((p.y == 0.0 || p.y == 0.5 || p.y == 1.0));
  }
  CHECK(s.domain_points[0].x == 0.0);
  CHECK(s.domain_points[0].y == 0.0);
  CHECK(s.domain_points[1].x == 0.5);
  CHECK(s.domain_points[8].x == 1.0);
  CHECK(s.domain_points[8].y == 1.0);
}

TEST_CASE("2x2 grid triangulates into two triangles of total area one") {
  DomainSampling s = sample_grid(unit_square(), 2, 2);
  Triangulation tri = triangulate(s, unit_square());
  CHECK(tri.triangles.size() == 2);
  CHECK(tri.total_area == doctest::Approx(1.0).epsilon(1e-14));
  for (const double a : tri.areas) CHECK(a == doctest::Approx(0.5));
}

TEST_CASE("a single triangle has area one half") {
  Triangulation tri = delaunay({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  REQUIRE(tri.triangles.size() == 1);
  CHECK(tri.areas[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("vertex-mean rule integrates constants and affine fields exactly") {
  DomainSpec spec = unit_square();
  DomainSampling s = sample_grid(spec, 21, 21);
  Triangulation tri = triangulate(s, spec);

  std::vector<double> ones(tri.vertices.size(), 1.0);
  CHECK(integrate_domain(tri, ones) == doctest::Approx(1.0).epsilon(1e-13));

  std::vector<double> fx(tri.vertices.size());
  for (size_t i = 0; i < fx.size(); ++i) fx[i] = tri.vertices[i].x;
  CHECK(integrate_domain(tri, fx) == doctest::Approx(0.5).epsilon(1e-12));

  std::vector<double> aff(tri.vertices.size());
  for (size_t i = 0; i < aff.size(); ++i)
    aff[i] = 2.0 + 3.0 * tri.vertices[i].x - 5.0 * tri.vertices[i].y;
  CHECK(integrate_domain(tri, aff) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadratic integrand on a 200x200 grid lands within 1e-4 relative") {
  DomainSpec spec = unit_square();
  DomainSampling s = sample_grid(spec, 200, 200);
  Triangulation tri = triangulate(s, spec);
  std::vector<double> f(tri.vertices.size());
  for (size_t i = 0; i < f.size(); ++i)
    f[i] = tri.vertices[i].x * tri.vertices[i].x;
  const double got = integrate_domain(tri, f);
  CHECK(std::abs(got - 1.0 / 3.0) / (1.0 / 3.0) < 1e-4);
}

TEST_CASE("quadrature error decays at second order under grid refinement") {
  const double e1 = quadratic_error(26);
  const double e2 = quadratic_error(51);
  const double e3 = quadratic_error(101);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("hole removal reproduces the punched-plate area") {
  DomainSpec spec = unit_square();
  spec.holes.push_back({{0.5, 0.5}, 0.25});
  DomainSampling s = sample_grid(spec, 100, 100);
  for (const Vec2& p : s.domain_points) {
    const double d = std::hypot(p.x - 0.5, p.y - 0.5);
    CHECK(d >= 0.25 - 1e-12);
  }
  Triangulation tri = triangulate(s, spec);
  const double exact = 1.0 - std::numbers::pi * 0.25 * 0.25;
  CHECK(std::abs(tri.total_area - exact) / exact < 1e-3);
}

TEST_CASE("trapezoid boundary rule integrates s^2 on a dense edge") {
  DomainSpec spec = unit_square();
  spec.segments.push_back(edge_segment(EdgeId::right, 0.0, 1.0, 5001));
  DomainSampling s = sample_grid(spec, 3, 3);
  const BoundarySegment& seg = s.segments[0];
  REQUIRE(seg.points.size() == 5001);
  std::vector<double> g(seg.points.size());
  for (size_t i = 0; i < g.size(); ++i) g[i] = seg.points[i].y * seg.points[i].y;
  CHECK(std::abs(integrate_boundary(seg, g) - 1.0 / 3.0) < 1e-7);
}

TEST_CASE("simpson weights are exact for quadratics and demand even intervals") {
  DomainSpec spec = unit_square();
  spec.segments.push_back(edge_segment(EdgeId::top, 0.0, 1.0, 5));
  DomainSampling s = sample_grid(spec, 3, 3, BoundaryRule::simpson);
  const BoundarySegment& seg = s.segments[0];
  std::vector<double> g(seg.points.size());
  for (size_t i = 0; i < g.size(); ++i) g[i] = seg.points[i].x * seg.points[i].x;
  CHECK(integrate_boundary(seg, g) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  DomainSpec bad = unit_square();
  bad.segments.push_back(edge_segment(EdgeId::top, 0.0, 1.0, 4));
  CHECK_THROWS_AS(sample_grid(bad, 3, 3, BoundaryRule::simpson), SizeMismatch);
}

TEST_CASE("boundary weights sum to the arc length") {
  DomainSpec spec = unit_square();
  spec.segments.push_back(edge_segment(EdgeId::right));
  spec.segments.push_back(edge_segment(EdgeId::right, 0.4, 0.6, 31));
  spec.holes.push_back({{0.5, 0.5}, 0.25});
  BoundarySegmentSpec rim;
  rim.label = "rim";
  rim.edge = EdgeId::hole;
  rim.hole_index = 0;
  rim.kind = BcKind::free_edge;
  spec.segments.push_back(rim);

  DomainSampling s = sample_grid(spec, 25, 25);
  auto weight_sum = [](const BoundarySegment& seg) {
    double w = 0.0;
    for (const double wi : seg.weights) w += wi;
    return w;
  };
  CHECK(weight_sum(s.segments[0]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(weight_sum(s.segments[1]) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(weight_sum(s.segments[2]) ==
        doctest::Approx(2.0 * std::numbers::pi * 0.25).epsilon(1e-10));
  CHECK(s.segments[2].closed);
}

TEST_CASE("default boundary sampling lands on the grid points") {
  DomainSpec spec = unit_square();
  spec.segments.push_back(edge_segment(EdgeId::right));
  DomainSampling s = sample_grid(spec, 5, 5);
  const BoundarySegment& seg = s.segments[0];
  REQUIRE(seg.points.size() == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(seg.points[i].x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(seg.points[i].y == doctest::Approx(0.25 * i).epsilon(1e-15));
  }
}

TEST_CASE("outward normals on edges and hole rims") {
  DomainSpec spec = unit_square();
  spec.holes.push_back({{0.5, 0.5}, 0.25});

  Vec2 n = outward_normal(spec, {1.0, 0.3});
  CHECK(n.x == doctest::Approx(1.0));
  CHECK(n.y == doctest::Approx(0.0));
  n = outward_normal(spec, {0.7, 1.0});
  CHECK(n.x == doctest::Approx(0.0));
  CHECK(n.y == doctest::Approx(1.0));
  n = outward_normal(spec, {0.0, 0.6});
  CHECK(n.x == doctest::Approx(-1.0));
  n = outward_normal(spec, {0.2, 0.0});
  CHECK(n.y == doctest::Approx(-1.0));

  const double theta = 0.73;
  const Vec2 rim{0.5 + 0.25 * std::cos(theta), 0.5 + 0.25 * std::sin(theta)};
  n = outward_normal(spec, rim);
  CHECK(n.x == doctest::Approx(-std::cos(theta)).epsilon(1e-12));
  CHECK(n.y == doctest::Approx(-std::sin(theta)).epsilon(1e-12));

  CHECK_THROWS_AS(outward_normal(spec, {0.3, 0.3}), PointOffBoundary);
}

TEST_CASE("hole rim sampling normals point toward the hole center") {
  DomainSpec spec = unit_square();
  spec.holes.push_back({{0.5, 0.5}, 0.25});
  BoundarySegmentSpec rim;
  rim.edge = EdgeId::hole;
  rim.hole_index = 0;
  rim.n_points = 16;
  spec.segments.push_back(rim);
  DomainSampling s = sample_grid(spec, 11, 11);
  const BoundarySegment& seg = s.segments[0];
  REQUIRE(seg.points.size() == 16);
  for (size_t i = 0; i < seg.points.size(); ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / 16.0;
    CHECK(seg.normals[i].x == doctest::Approx(-std::cos(theta)).epsilon(1e-12));
    CHECK(seg.normals[i].y == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
    const double d = std::hypot(seg.points[i].x - 0.5, seg.points[i].y - 0.5);
    CHECK(d == doctest::Approx(0.25).epsilon(1e-13));
  }
}

TEST_CASE("delaunay triangles of a random cloud have empty circumcircles") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::vector<Vec2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 120; ++i) pts.push_back({unit(rng), unit(rng)});

  Triangulation tri = delaunay(pts);
  CHECK(tri.total_area == doctest::Approx(1.0).epsilon(1e-12));

  auto incircle = [](Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
    const long double ax = a.x - p.x, ay = a.y - p.y;
    const long double bx = b.x - p.x, by = b.y - p.y;
    const long double cx = c.x - p.x, cy = c.y - p.y;
    const long double a2 = ax * ax + ay * ay;
    const long double b2 = bx * bx + by * by;
    const long double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) +
           a2 * (bx * cy - by * cx);
  };

  for (const auto& t : tri.triangles) {
    const Vec2 a = tri.vertices[t[0]];
    const Vec2 b = tri.vertices[t[1]];
    const Vec2 c = tri.vertices[t[2]];
    for (int v = 0; v < static_cast<int>(tri.vertices.size()); ++v) {
      if (v == t[0] || v == t[1] || v == t[2]) continue;
      CHECK(static_cast<double>(incircle(a, b, c, tri.vertices[v])) <= 1e-12);
    }
  }
}

TEST_CASE("triangulated area is insensitive to insertion order") {
  std::mt19937_64 rng(911);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec2> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int i = 0; i < 200; ++i) pts.push_back({unit(rng), unit(rng)});
  const double base = delaunay(pts).total_area;
  std::shuffle(pts.begin(), pts.end(), rng);
  CHECK(delaunay(pts).total_area == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("vertex weights reproduce the vertex-mean integral") {
  DomainSpec spec = unit_square();
  spec.holes.push_back({{0.5, 0.5}, 0.2});
  DomainSampling s = sample_grid(spec, 31, 31);
  Triangulation tri = triangulate(s, spec);
  std::vector<double> w = vertex_quadrature_weights(tri);

  double wsum = 0.0;
  for (const double wi : w) wsum += wi;
  CHECK(wsum == doctest::Approx(tri.total_area).epsilon(1e-13));

  std::vector<double> f(tri.vertices.size());
  for (size_t i = 0; i < f.size(); ++i)
    f[i] = std::sin(3.0 * tri.vertices[i].x) + tri.vertices[i].y;
  double by_weights = 0.0;
  for (size_t i = 0; i < f.size(); ++i) by_weights += w[i] * f[i];
  CHECK(by_weights ==
        doctest::Approx(integrate_domain(tri, f)).epsilon(1e-12));
}

TEST_CASE("degenerate and empty inputs are rejected") {
  CHECK_THROWS_AS(delaunay({{0, 0}, {1, 1}}), DegenerateInput);
  CHECK_THROWS_AS(delaunay({{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0.5, 0.5}}),
                  DegenerateInput);
  CHECK_THROWS_AS(delaunay({{0, 0}, {1, 0}, {0, 1}, {1, 0}}), DegenerateInput);

  DomainSpec spec = unit_square();
  spec.holes.push_back({{0.5, 0.5}, 10.0});
  CHECK_THROWS_AS(sample_grid(spec, 10, 10), EmptyDomain);
  CHECK_THROWS_AS(sample_grid(unit_square(), 1, 5), EmptyDomain);

  std::vector<double> wrong(3, 1.0);
  DomainSampling s = sample_grid(unit_square(), 4, 4);
  Triangulation tri = triangulate(s, unit_square());
  CHECK_THROWS_AS(integrate_domain(tri, wrong), SizeMismatch);
}
