#include "mdem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "mdem/errors.hpp"

namespace mdem::fem {

namespace {

struct ElementFrame {
  std::array<Vec2, 3> grad;  // reference shape-function gradients
  double area = 0.0;
};

ElementFrame element_frame(const std::vector<Vec2>& nodes,
                           const std::array<int, 3>& el, size_t index) {
  const Vec2 xa = nodes[static_cast<size_t>(el[0])];
  const Vec2 xb = nodes[static_cast<size_t>(el[1])];
  const Vec2 xc = nodes[static_cast<size_t>(el[2])];
  const double d11 = xb.x - xa.x, d12 = xc.x - xa.x;
  const double d21 = xb.y - xa.y, d22 = xc.y - xa.y;
  const double det = d11 * d22 - d12 * d21;
  if (det <= 0.0)
    throw DegenerateInput("element " + std::to_string(index) +
                          " has non-positive area");
  ElementFrame fr;
  fr.area = 0.5 * det;
  const double inv = 1.0 / det;
  fr.grad[1] = {d22 * inv, -d12 * inv};
  fr.grad[2] = {-d21 * inv, d11 * inv};
  fr.grad[0] = {-fr.grad[1].x - fr.grad[2].x, -fr.grad[1].y - fr.grad[2].y};
  return fr;
}

Mat2 deformation_at(const ElementFrame& fr, const std::array<int, 3>& el,
                    std::span<const double> u) {
  Mat2 F = Mat2::identity();
  for (int n = 0; n < 3; ++n) {
    const double ux = u[static_cast<size_t>(2 * el[n])];
    const double uy = u[static_cast<size_t>(2 * el[n] + 1)];
    F.a11 += ux * fr.grad[n].x;
    F.a12 += ux * fr.grad[n].y;
    F.a21 += uy * fr.grad[n].x;
    F.a22 += uy * fr.grad[n].y;
  }
  return F;
}

struct EdgeLine {
  Vec2 origin{};
  Vec2 dir{};
  double length = 0.0;
};

EdgeLine edge_line(const Rect& r, EdgeId e) {
  switch (e) {
    case EdgeId::left:
      return {{r.x0, r.y0}, {0.0, 1.0}, r.height()};
    case EdgeId::right:
      return {{r.x1, r.y0}, {0.0, 1.0}, r.height()};
    case EdgeId::bottom:
      return {{r.x0, r.y0}, {1.0, 0.0}, r.width()};
    case EdgeId::top:
      return {{r.x0, r.y1}, {1.0, 0.0}, r.width()};
    default:
      throw std::invalid_argument("edge_line: not a rectangle edge");
  }
}

double line_offset(const EdgeLine& ln, Vec2 p) {
  const Vec2 d{p.x - ln.origin.x, p.y - ln.origin.y};
  return d.x * -ln.dir.y + d.y * ln.dir.x;
}

double line_param(const EdgeLine& ln, Vec2 p) {
  const Vec2 d{p.x - ln.origin.x, p.y - ln.origin.y};
  return (d.x * ln.dir.x + d.y * ln.dir.y) / ln.length;
}

double rim_param(const CircleHole& h, Vec2 p) {
  double t = std::atan2(p.y - h.center.y, p.x - h.center.x) /
             (2.0 * std::numbers::pi);
  if (t < 0.0) t += 1.0;
  return t;
}

}  // namespace

FemMesh build_fem_mesh(const DomainSpec& spec, const Triangulation& tri) {
  FemMesh mesh;

  // Compact away vertices not referenced by any surviving triangle so the
  // stiffness matrix has no empty rows.
  std::vector<int> new_index(tri.vertices.size(), -1);
  for (const auto& el : tri.triangles)
    for (int v : el) new_index[static_cast<size_t>(v)] = 0;
  for (size_t i = 0; i < tri.vertices.size(); ++i) {
    if (new_index[i] == 0) {
      new_index[i] = static_cast<int>(mesh.nodes.size());
      mesh.nodes.push_back(tri.vertices[i]);
    }
  }
  mesh.elements.reserve(tri.triangles.size());
  for (const auto& el : tri.triangles)
    mesh.elements.push_back({new_index[static_cast<size_t>(el[0])],
                             new_index[static_cast<size_t>(el[1])],
                             new_index[static_cast<size_t>(el[2])]});

  // Boundary edges appear in exactly one element; keep them oriented as in
  // their owner so (a, b) runs counter-clockwise around the domain.
  std::map<std::pair<int, int>, std::pair<int, int>> edge_use;
  for (const auto& el : mesh.elements) {
    for (int k = 0; k < 3; ++k) {
      const int a = el[static_cast<size_t>(k)];
      const int b = el[static_cast<size_t>((k + 1) % 3)];
      auto [it, fresh] = edge_use.try_emplace({std::min(a, b), std::max(a, b)},
                                              std::pair<int, int>{a, b});
      if (!fresh) it->second = {-1, -1};
    }
  }
  std::vector<std::pair<int, int>> boundary_edges;
  std::vector<char> on_boundary(mesh.nodes.size(), 0);
  for (const auto& [key, oriented] : edge_use) {
    if (oriented.first < 0) continue;
    boundary_edges.push_back(oriented);
    on_boundary[static_cast<size_t>(oriented.first)] = 1;
    on_boundary[static_cast<size_t>(oriented.second)] = 1;
  }

  const double scale = std::max({spec.rect.width(), spec.rect.height(), 1.0});
  const double tol_line = 1e-9 * scale;
  const double mean_area =
      tri.total_area / static_cast<double>(tri.triangles.size());
  const double h_est = std::sqrt(2.0 * mean_area);
  const double tol_rim = std::max(2.0 * h_est, tol_line);

  std::map<std::pair<int, int>, double> prescribed;
  for (const BoundarySegmentSpec& sp : spec.segments) {
    if (sp.kind != BcKind::dirichlet) continue;
    const bool fx = sp.components.find('x') != std::string::npos;
    const bool fy = sp.components.find('y') != std::string::npos;
    for (size_t n = 0; n < mesh.nodes.size(); ++n) {
      if (!on_boundary[n]) continue;
      const Vec2 p = mesh.nodes[n];
      bool hit = false;
      if (sp.edge == EdgeId::hole) {
        const CircleHole& hole = spec.holes.at(static_cast<size_t>(sp.hole_index));
        const double d = norm({p.x - hole.center.x, p.y - hole.center.y});
        const double t = rim_param(hole, p);
        hit = std::abs(d - hole.radius) <= tol_rim &&
              (sp.t1 - sp.t0 >= 1.0 - 1e-12 ||
               (t >= sp.t0 - 1e-9 && t <= sp.t1 + 1e-9));
      } else {
        const EdgeLine ln = edge_line(spec.rect, sp.edge);
        const double t = line_param(ln, p);
        hit = std::abs(line_offset(ln, p)) <= tol_line &&
              t >= sp.t0 - 1e-9 && t <= sp.t1 + 1e-9;
      }
      if (!hit) continue;
      if (fx) prescribed[{static_cast<int>(n), 0}] = sp.dirichlet_value[0].eval(p);
      if (fy) prescribed[{static_cast<int>(n), 1}] = sp.dirichlet_value[1].eval(p);
    }
  }
  for (const auto& [key, value] : prescribed)
    mesh.constraints.push_back({key.first, key.second, value});
  if (mesh.constraints.empty())
    throw DegenerateInput("no boundary node matched a dirichlet segment");

  for (const auto& [na, nb] : boundary_edges) {
    const Vec2 pa = mesh.nodes[static_cast<size_t>(na)];
    const Vec2 pb = mesh.nodes[static_cast<size_t>(nb)];
    for (const BoundarySegmentSpec& sp : spec.segments) {
      if (sp.kind != BcKind::traction) continue;
      if (sp.edge == EdgeId::hole) {
        const CircleHole& hole = spec.holes.at(static_cast<size_t>(sp.hole_index));
        const double da = norm({pa.x - hole.center.x, pa.y - hole.center.y});
        const double db = norm({pb.x - hole.center.x, pb.y - hole.center.y});
        if (std::abs(da - hole.radius) > tol_rim ||
            std::abs(db - hole.radius) > tol_rim)
          continue;
        if (sp.t1 - sp.t0 < 1.0 - 1e-12) {
          const Vec2 mid{0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
          const double tm = rim_param(hole, mid);
          if (tm < sp.t0 || tm > sp.t1) continue;
        }
        mesh.tractions.push_back({na, nb, 0.0, 1.0,
                                  {sp.traction[0].eval(pa), sp.traction[1].eval(pa)},
                                  {sp.traction[0].eval(pb), sp.traction[1].eval(pb)}});
        continue;
      }
      const EdgeLine ln = edge_line(spec.rect, sp.edge);
      if (std::abs(line_offset(ln, pa)) > tol_line ||
          std::abs(line_offset(ln, pb)) > tol_line)
        continue;
      const double ta = line_param(ln, pa);
      const double tb = line_param(ln, pb);
      const double lo = std::max(std::min(ta, tb), sp.t0);
      const double hi = std::min(std::max(ta, tb), sp.t1);
      if (hi - lo <= 1e-12) continue;
      double sa = (lo - ta) / (tb - ta);
      double sb = (hi - ta) / (tb - ta);
      if (sa > sb) std::swap(sa, sb);
      sa = std::clamp(sa, 0.0, 1.0);
      sb = std::clamp(sb, 0.0, 1.0);
      const Vec2 qa{pa.x + sa * (pb.x - pa.x), pa.y + sa * (pb.y - pa.y)};
      const Vec2 qb{pa.x + sb * (pb.x - pa.x), pa.y + sb * (pb.y - pa.y)};
      mesh.tractions.push_back({na, nb, sa, sb,
                                {sp.traction[0].eval(qa), sp.traction[1].eval(qa)},
                                {sp.traction[0].eval(qb), sp.traction[1].eval(qb)}});
    }
  }

  return mesh;
}

std::vector<double> external_force(const FemMesh& mesh) {
  std::vector<double> f(2 * mesh.nodes.size(), 0.0);
  for (const TractionEdge& te : mesh.tractions) {
    const Vec2 pa = mesh.nodes[static_cast<size_t>(te.a)];
    const Vec2 pb = mesh.nodes[static_cast<size_t>(te.b)];
    const double edge_len = norm({pb.x - pa.x, pb.y - pa.y});
    const double len = edge_len * (te.sb - te.sa);
    if (len <= 0.0) continue;
    // Trapezoid along the loaded piece; each end load is split between the
    // edge nodes by the linear shape functions at its location.
    const double half = 0.5 * len;
    f[static_cast<size_t>(2 * te.a)] += half * (1.0 - te.sa) * te.ta.x;
    f[static_cast<size_t>(2 * te.a + 1)] += half * (1.0 - te.sa) * te.ta.y;
    f[static_cast<size_t>(2 * te.b)] += half * te.sa * te.ta.x;
    f[static_cast<size_t>(2 * te.b + 1)] += half * te.sa * te.ta.y;
    f[static_cast<size_t>(2 * te.a)] += half * (1.0 - te.sb) * te.tb.x;
    f[static_cast<size_t>(2 * te.a + 1)] += half * (1.0 - te.sb) * te.tb.y;
    f[static_cast<size_t>(2 * te.b)] += half * te.sb * te.tb.x;
    f[static_cast<size_t>(2 * te.b + 1)] += half * te.sb * te.tb.y;
  }
  return f;
}

void assemble_residual_and_tangent(const FemMesh& mesh,
                                   const MaterialParams& mat,
                                   std::span<const double> u,
                                   std::vector<double>& residual,
                                   Eigen::SparseMatrix<double>& tangent,
                                   double load_factor) {
  const size_t ndof = 2 * mesh.nodes.size();
  if (u.size() != ndof)
    throw SizeMismatch("displacement vector does not match the mesh");
  residual.assign(ndof, 0.0);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.elements.size() * 36);
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& el = mesh.elements[e];
    const ElementFrame fr = element_frame(mesh.nodes, el, e);
    const Mat2 F = deformation_at(fr, el, u);
    if (det(F) <= 0.0)
      throw NonPositiveJacobian("element " + std::to_string(e) + " inverted");
    const Mat2 P = first_pk_stress(F, mat);
    const Tensor4 A = pk_stress_tangent(F, mat);
    for (int n = 0; n < 3; ++n) {
      const Vec2 gn = fr.grad[n];
      const int rn = 2 * el[n];
      residual[static_cast<size_t>(rn)] += fr.area * (P.a11 * gn.x + P.a12 * gn.y);
      residual[static_cast<size_t>(rn + 1)] += fr.area * (P.a21 * gn.x + P.a22 * gn.y);
      for (int m = 0; m < 3; ++m) {
        const Vec2 gm = fr.grad[m];
        const int cm = 2 * el[m];
        for (int i = 0; i < 2; ++i) {
          for (int k = 0; k < 2; ++k) {
            const double val =
                fr.area * (A(i, 0, k, 0) * gn.x * gm.x + A(i, 0, k, 1) * gn.x * gm.y +
                           A(i, 1, k, 0) * gn.y * gm.x + A(i, 1, k, 1) * gn.y * gm.y);
            trip.emplace_back(rn + i, cm + k, val);
          }
        }
      }
    }
  }
  tangent.resize(static_cast<Eigen::Index>(ndof), static_cast<Eigen::Index>(ndof));
  tangent.setFromTriplets(trip.begin(), trip.end());

  const std::vector<double> f = external_force(mesh);
  for (size_t d = 0; d < ndof; ++d) residual[d] -= load_factor * f[d];
}

double potential_energy(const FemMesh& mesh, const MaterialParams& mat,
                        std::span<const double> u, double load_factor) {
  if (u.size() != 2 * mesh.nodes.size())
    throw SizeMismatch("displacement vector does not match the mesh");
  double strain = 0.0;
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& el = mesh.elements[e];
    const ElementFrame fr = element_frame(mesh.nodes, el, e);
    const Mat2 F = deformation_at(fr, el, u);
    strain += fr.area * strain_energy(kinematics(F), mat);
  }
  const std::vector<double> f = external_force(mesh);
  double work = 0.0;
  for (size_t d = 0; d < u.size(); ++d) work += f[d] * u[d];
  return strain - load_factor * work;
}

FemSolution solve_static(const FemMesh& mesh, const MaterialParams& mat,
                         int load_steps, double tol_r) {
  if (load_steps < 1) throw std::invalid_argument("load_steps must be >= 1");
  const int nnode = static_cast<int>(mesh.nodes.size());
  const size_t ndof = 2 * static_cast<size_t>(nnode);

  std::vector<char> fixed(ndof, 0);
  std::vector<double> target(ndof, 0.0);
  for (const NodalConstraint& c : mesh.constraints) {
    if (c.node < 0 || c.node >= nnode || c.component < 0 || c.component > 1)
      throw SizeMismatch("constraint addresses a DOF outside the mesh");
    fixed[static_cast<size_t>(2 * c.node + c.component)] = 1;
    target[static_cast<size_t>(2 * c.node + c.component)] = c.value;
  }
  std::vector<int> free_dofs;
  for (size_t d = 0; d < ndof; ++d)
    if (!fixed[d]) free_dofs.push_back(static_cast<int>(d));
  if (free_dofs.size() == ndof)
    throw DegenerateInput("solve_static: no constrained DOFs");
  std::vector<int> free_index(ndof, -1);
  for (size_t j = 0; j < free_dofs.size(); ++j)
    free_index[static_cast<size_t>(free_dofs[j])] = static_cast<int>(j);

  const std::vector<double> fext = external_force(mesh);
  double fnorm = 0.0;
  for (double v : fext) fnorm += v * v;
  const double abs_floor = 1e-14 * (1.0 + std::sqrt(fnorm));

  std::vector<double> residual;
  Eigen::SparseMatrix<double> tangent;
  const int max_newton = 30;

  auto try_step = [&](double factor, std::vector<double>& u,
                      std::vector<NewtonRecord>& log) -> bool {
    for (size_t d = 0; d < ndof; ++d)
      if (fixed[d]) u[d] = factor * target[d];
    double r0 = 0.0;
    for (int it = 0; it < max_newton; ++it) {
      try {
        assemble_residual_and_tangent(mesh, mat, u, residual, tangent, factor);
      } catch (const NonPositiveJacobian&) {
        return false;
      }
      double rn = 0.0;
      for (int d : free_dofs) rn += residual[static_cast<size_t>(d)] *
                                    residual[static_cast<size_t>(d)];
      rn = std::sqrt(rn);
      if (!std::isfinite(rn)) return false;
      log.push_back({factor, it, rn});
      if (it == 0) r0 = rn;
      if (rn <= tol_r * r0 || rn <= abs_floor) return true;

      if (free_dofs.empty()) return true;
      const Eigen::Index nf = static_cast<Eigen::Index>(free_dofs.size());
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(static_cast<size_t>(tangent.nonZeros()));
      for (int col = 0; col < tangent.outerSize(); ++col) {
        const int jc = free_index[static_cast<size_t>(col)];
        if (jc < 0) continue;
        for (Eigen::SparseMatrix<double>::InnerIterator itn(tangent, col); itn;
             ++itn) {
          const int jr = free_index[static_cast<size_t>(itn.row())];
          if (jr >= 0) trip.emplace_back(jr, jc, itn.value());
        }
      }
      Eigen::SparseMatrix<double> kff(nf, nf);
      kff.setFromTriplets(trip.begin(), trip.end());
      Eigen::VectorXd rhs(nf);
      for (Eigen::Index j = 0; j < nf; ++j)
        rhs[j] = -residual[static_cast<size_t>(free_dofs[static_cast<size_t>(j)])];
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(kff);
      if (lu.info() != Eigen::Success) return false;
      const Eigen::VectorXd du = lu.solve(rhs);
      if (lu.info() != Eigen::Success) return false;
      for (Eigen::Index j = 0; j < nf; ++j)
        u[static_cast<size_t>(free_dofs[static_cast<size_t>(j)])] += du[j];
    }
    return false;
  };

  FemSolution sol;
  std::vector<double> u(ndof, 0.0);
  double reached = 0.0;
  double step = 1.0 / load_steps;
  int bisections = 0;
  while (reached < 1.0 - 1e-12) {
    const double factor = std::min(reached + step, 1.0);
    std::vector<double> trial = u;
    std::vector<NewtonRecord> attempt_log;
    if (try_step(factor, trial, attempt_log)) {
      sol.log.insert(sol.log.end(), attempt_log.begin(), attempt_log.end());
      u = std::move(trial);
      reached = factor;
    } else {
      if (++bisections > 5)
        throw NoConvergence("load step at factor " + std::to_string(factor) +
                            " failed after five bisections");
      step *= 0.5;
    }
  }

  sol.mesh = mesh;
  sol.u = std::move(u);
  sol.F.reserve(mesh.elements.size());
  sol.P.reserve(mesh.elements.size());
  sol.psi.reserve(mesh.elements.size());
  double strain = 0.0;
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& el = mesh.elements[e];
    const ElementFrame fr = element_frame(mesh.nodes, el, e);
    const Mat2 F = deformation_at(fr, el, sol.u);
    sol.F.push_back(F);
    sol.P.push_back(first_pk_stress(F, mat));
    sol.psi.push_back(strain_energy(kinematics(F), mat));
    strain += fr.area * sol.psi.back();
  }
  double work = 0.0;
  for (size_t d = 0; d < ndof; ++d) work += fext[d] * sol.u[d];
  sol.potential = strain - work;
  return sol;
}

std::vector<FemSample> sample_solution(const FemSolution& sol,
                                       std::span<const Vec2> queries) {
  const FemMesh& mesh = sol.mesh;
  if (mesh.elements.empty()) throw PointOutsideMesh("mesh has no elements");

  double x0 = mesh.nodes[0].x, x1 = x0, y0 = mesh.nodes[0].y, y1 = y0;
  for (const Vec2& p : mesh.nodes) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const int gridn = std::max(
      1, static_cast<int>(std::ceil(std::sqrt(
             static_cast<double>(mesh.elements.size())))));
  const double bw = std::max(x1 - x0, 1e-300) / gridn;
  const double bh = std::max(y1 - y0, 1e-300) / gridn;
  auto bin_x = [&](double x) {
    return std::clamp(static_cast<int>((x - x0) / bw), 0, gridn - 1);
  };
  auto bin_y = [&](double y) {
    return std::clamp(static_cast<int>((y - y0) / bh), 0, gridn - 1);
  };
  std::vector<std::vector<int>> bins(static_cast<size_t>(gridn) * gridn);
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& el = mesh.elements[e];
    const Vec2 pa = mesh.nodes[static_cast<size_t>(el[0])];
    const Vec2 pb = mesh.nodes[static_cast<size_t>(el[1])];
    const Vec2 pc = mesh.nodes[static_cast<size_t>(el[2])];
    const int bx0 = bin_x(std::min({pa.x, pb.x, pc.x}));
    const int bx1 = bin_x(std::max({pa.x, pb.x, pc.x}));
    const int by0 = bin_y(std::min({pa.y, pb.y, pc.y}));
    const int by1 = bin_y(std::max({pa.y, pb.y, pc.y}));
    for (int by = by0; by <= by1; ++by)
      for (int bx = bx0; bx <= bx1; ++bx)
        bins[static_cast<size_t>(by) * gridn + bx].push_back(static_cast<int>(e));
  }

  std::vector<FemSample> out;
  out.reserve(queries.size());
  for (const Vec2& q : queries) {
    const auto& cand = bins[static_cast<size_t>(bin_y(q.y)) * gridn + bin_x(q.x)];
    bool found = false;
    for (const int e : cand) {
      const auto& el = mesh.elements[static_cast<size_t>(e)];
      const Vec2 pa = mesh.nodes[static_cast<size_t>(el[0])];
      const Vec2 pb = mesh.nodes[static_cast<size_t>(el[1])];
      const Vec2 pc = mesh.nodes[static_cast<size_t>(el[2])];
      const double d11 = pb.x - pa.x, d12 = pc.x - pa.x;
      const double d21 = pb.y - pa.y, d22 = pc.y - pa.y;
      const double dt = d11 * d22 - d12 * d21;
      const double lb = ((q.x - pa.x) * d22 - (q.y - pa.y) * d12) / dt;
      const double lc = (-(q.x - pa.x) * d21 + (q.y - pa.y) * d11) / dt;
      const double la = 1.0 - lb - lc;
      double longest = std::max({norm({d11, d21}), norm({d12, d22}),
                                 norm({d12 - d11, d22 - d21})});
      const double tol = 1e-9 * longest / dt;
      if (la < -tol || lb < -tol || lc < -tol) continue;
      FemSample s;
      const size_t ia = static_cast<size_t>(2 * el[0]);
      const size_t ib = static_cast<size_t>(2 * el[1]);
      const size_t ic = static_cast<size_t>(2 * el[2]);
      s.u = {la * sol.u[ia] + lb * sol.u[ib] + lc * sol.u[ic],
             la * sol.u[ia + 1] + lb * sol.u[ib + 1] + lc * sol.u[ic + 1]};
      s.P = sol.P[static_cast<size_t>(e)];
      out.push_back(s);
      found = true;
      break;
    }
    if (!found)
      throw PointOutsideMesh("query (" + std::to_string(q.x) + ", " +
                             std::to_string(q.y) + ") is outside the mesh");
  }
  return out;
}

FieldSnapshot nodal_fields(const FemSolution& sol) {
  const FemMesh& mesh = sol.mesh;
  FieldSnapshot snap;
  snap.X = mesh.nodes;
  snap.u.resize(mesh.nodes.size());
  for (size_t n = 0; n < mesh.nodes.size(); ++n)
    snap.u[n] = {sol.u[2 * n], sol.u[2 * n + 1]};

  snap.P.assign(mesh.nodes.size(), Mat2{});
  snap.psi.assign(mesh.nodes.size(), 0.0);
  std::vector<double> wsum(mesh.nodes.size(), 0.0);
  for (size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto& el = mesh.elements[e];
    const ElementFrame fr = element_frame(mesh.nodes, el, e);
    for (int n = 0; n < 3; ++n) {
      const size_t v = static_cast<size_t>(el[n]);
      snap.P[v] = snap.P[v] + fr.area * sol.P[e];
      snap.psi[v] += fr.area * sol.psi[e];
      wsum[v] += fr.area;
    }
  }
  for (size_t n = 0; n < mesh.nodes.size(); ++n) {
    snap.P[n] = (1.0 / wsum[n]) * snap.P[n];
    snap.psi[n] /= wsum[n];
  }
  return snap;
}

}  // namespace mdem::fem
