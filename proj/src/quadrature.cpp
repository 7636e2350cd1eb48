#include "mdem/quadrature.hpp"

#include <vector>

#include "mdem/errors.hpp"
#include "mdem/numeric.hpp"

namespace mdem {

double integrate_domain(const Triangulation& tri, std::span<const double> f) {
  if (f.size() != tri.vertices.size())
    throw SizeMismatch("integrate_domain: one value per vertex required");
  std::vector<double> terms;
  terms.reserve(tri.triangles.size());
  for (size_t j = 0; j < tri.triangles.size(); ++j) {
    const auto& t = tri.triangles[j];
    terms.push_back(tri.areas[j] * (f[t[0]] + f[t[1]] + f[t[2]]) / 3.0);
  }
  return pairwise_sum(terms);
}

double integrate_boundary(const BoundarySegment& seg,
                          std::span<const double> g) {
  if (g.size() != seg.points.size())
    throw SizeMismatch("integrate_boundary: one value per point required");
  std::vector<double> terms;
  terms.reserve(g.size());
  for (size_t i = 0; i < g.size(); ++i) terms.push_back(seg.weights[i] * g[i]);
  return pairwise_sum(terms);
}

std::vector<double> vertex_quadrature_weights(const Triangulation& tri) {
  std::vector<double> w(tri.vertices.size(), 0.0);
  for (size_t j = 0; j < tri.triangles.size(); ++j) {
    const double third = tri.areas[j] / 3.0;
    for (const int v : tri.triangles[j]) w[v] += third;
  }
  return w;
}

}  // namespace mdem
