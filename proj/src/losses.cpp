#include "mdem/losses.hpp"

#include <cmath>
#include <vector>

#include "mdem/errors.hpp"
#include "mdem/numeric.hpp"
#include "mdem/quadrature.hpp"

namespace mdem {

namespace {

using ad::Var;

struct BreakdownTerms {
  std::vector<double> pi, res, trac, diri, stress, pen;

  LossBreakdown finalize(const LossWeights& lw) const {
    LossBreakdown b;
    b.pi = pairwise_sum(pi);
    b.penalty = pairwise_sum(pen);
    b.mse_r = pairwise_sum(res);
    b.mse_t = pairwise_sum(trac);
    b.mse_u = pairwise_sum(diri);
    b.mse_p = pairwise_sum(stress);
    b.total = b.pi + b.penalty + lw.w_r * b.mse_r + lw.w_t * b.mse_t +
              lw.w_u * b.mse_u + lw.w_p * b.mse_p;
    return b;
  }
};

// Shared kernel for the taped and plain evaluation paths. begin_point()
// rewinds the tape between collocation points; commit(term, weight) feeds
// the objective accumulator. The plain path passes no-ops.
template <class T, class Begin, class Commit>
LossBreakdown run_loss(Formulation form, const NetworkShape& shape,
                       Activation act, const OutputTransform& tf,
                       const ProblemDefinition& prob, const LossWeights& lw,
                       const T* theta, Begin&& begin_point, Commit&& commit) {
  const bool strong_form = form == Formulation::pinn;
  const bool has_energy = form != Formulation::pinn;
  const bool has_head = form == Formulation::mdem;
  if (has_head && shape.output_width() != 6)
    throw BadArchitecture("stress-head loss needs a 6-output network");
  if (prob.domain_points.size() != prob.domain_weights.size())
    throw SizeMismatch("one quadrature weight per collocation point required");
  if (prob.domain_points.empty()) throw EmptyDomain("loss without domain points");

  const MaterialParams& mat = prob.material;
  const double M = static_cast<double>(prob.domain_points.size());
  const double Nt =
      prob.tractions.empty() ? 1.0 : static_cast<double>(prob.tractions.size());
  const double Nd =
      prob.dirichlet.empty() ? 1.0 : static_cast<double>(prob.dirichlet.size());
  const bool use_dirichlet = tf.mode == OutputTransform::Mode::trained &&
                             !prob.dirichlet.empty();

  NetWorkspace<T> ws;
  BreakdownTerms out;
  out.pi.reserve(prob.domain_points.size() + prob.tractions.size());

  auto penalize = [&](const T& J, double weight, BreakdownTerms& terms) {
    const T gap = J - T(prob.j_floor);
    const T pen = prob.penalty_scale * gap * gap;
    commit(pen, weight);
    terms.pen.push_back(value_of(pen) * weight);
  };

  for (size_t i = 0; i < prob.domain_points.size(); ++i) {
    const Vec2 X = prob.domain_points[i];
    const double w_v = prob.domain_weights[i];
    begin_point();
    DualBundleT<T> b =
        evaluate(shape, act, theta, tf, X, strong_form ? 2 : 1, ws);
    Mat2T<T> F = deformation_gradient(b.grad_u);
    const T J = det(F);
    if (!(value_of(J) > prob.j_floor)) {
      penalize(J, has_energy ? w_v : lw.w_r / M, out);
      continue;
    }

    if (has_energy) {
      const T psi = strain_energy(kinematics(F), mat);
      commit(psi, w_v);
      out.pi.push_back(value_of(psi) * w_v);
      if (has_head) {
        Mat2T<T> gap = b.p_head - first_pk_stress(F, mat);
        const T d2 = frobenius_squared(gap);
        commit(d2, lw.w_p / M);
        out.stress.push_back(value_of(d2) / M);
      }
    } else {
      const Tensor4T<T> A = pk_stress_tangent(F, mat);
      // div P via the chain rule: r_i = A_iJkL * u_k,LJ with the network
      // second derivatives packed (xx, xy, yy) per displacement component.
      T r[2] = {T(0.0), T(0.0)};
      for (int i2 = 0; i2 < 2; ++i2)
        for (int k = 0; k < 2; ++k)
          for (int Ld = 0; Ld < 2; ++Ld)
            for (int Jd = 0; Jd < 2; ++Jd)
              r[i2] = r[i2] + A(i2, Jd, k, Ld) *
                                  b.d2u[static_cast<size_t>(3 * k + Ld + Jd)];
      const T r2 = r[0] * r[0] + r[1] * r[1];
      commit(r2, lw.w_r / M);
      out.res.push_back(value_of(r2) / M);
    }
  }

  for (const TractionSample& ts : prob.tractions) {
    begin_point();
    DualBundleT<T> b = evaluate(shape, act, theta, tf, ts.X, 1, ws);
    if (has_energy && (ts.tbar.x != 0.0 || ts.tbar.y != 0.0)) {
      const T work = ts.tbar.x * b.u.x + ts.tbar.y * b.u.y;
      commit(work, -ts.w);
      out.pi.push_back(-value_of(work) * ts.w);
    }
    if (form == Formulation::mdem) {
      const T tx = b.p_head.a11 * ts.N.x + b.p_head.a12 * ts.N.y - ts.tbar.x;
      const T ty = b.p_head.a21 * ts.N.x + b.p_head.a22 * ts.N.y - ts.tbar.y;
      const T m = tx * tx + ty * ty;
      commit(m, lw.w_t / Nt);
      out.trac.push_back(value_of(m) / Nt);
    } else if (strong_form) {
      Mat2T<T> F = deformation_gradient(b.grad_u);
      const T J = det(F);
      if (!(value_of(J) > prob.j_floor)) {
        penalize(J, lw.w_t / Nt, out);
        continue;
      }
      Mat2T<T> P = first_pk_stress(F, mat);
      const T tx = P.a11 * ts.N.x + P.a12 * ts.N.y - ts.tbar.x;
      const T ty = P.a21 * ts.N.x + P.a22 * ts.N.y - ts.tbar.y;
      const T m = tx * tx + ty * ty;
      commit(m, lw.w_t / Nt);
      out.trac.push_back(value_of(m) / Nt);
    }
  }

  if (use_dirichlet) {
    for (const DirichletSample& ds : prob.dirichlet) {
      begin_point();
      DualBundleT<T> b = evaluate(shape, act, theta, tf, ds.X, 0, ws);
      T m = T(0.0);
      if (ds.fix_x) {
        const T dx = b.u.x - ds.ubar.x;
        m = m + dx * dx;
      }
      if (ds.fix_y) {
        const T dy = b.u.y - ds.ubar.y;
        m = m + dy * dy;
      }
      commit(m, lw.w_u / Nd);
      out.diri.push_back(value_of(m) / Nd);
    }
  }

  return out.finalize(lw);
}

}  // namespace

ProblemDefinition assemble_problem(const DomainSpec& spec,
                                   const DomainSampling& sampling,
                                   const Triangulation& tri,
                                   MaterialParams material) {
  if (tri.vertices.size() != sampling.domain_points.size())
    throw SizeMismatch("triangulation does not match the sampling");

  ProblemDefinition prob;
  prob.material = material;
  prob.domain_points = sampling.domain_points;
  prob.domain_weights = vertex_quadrature_weights(tri);

  for (const BoundarySegment& seg : sampling.segments) {
    const BoundarySegmentSpec& sp =
        spec.segments.at(static_cast<size_t>(seg.spec_index));
    if (sp.kind == BcKind::dirichlet) {
      const bool fx = sp.components.find('x') != std::string::npos;
      const bool fy = sp.components.find('y') != std::string::npos;
      for (size_t i = 0; i < seg.points.size(); ++i) {
        const Vec2 X = seg.points[i];
        prob.dirichlet.push_back({X,
                                  {sp.dirichlet_value[0].eval(X),
                                   sp.dirichlet_value[1].eval(X)},
                                  seg.weights[i],
                                  fx,
                                  fy});
      }
    } else {
      for (size_t i = 0; i < seg.points.size(); ++i) {
        const Vec2 X = seg.points[i];
        Vec2 tbar{0.0, 0.0};
        if (sp.kind == BcKind::traction)
          tbar = {sp.traction[0].eval(X), sp.traction[1].eval(X)};
        prob.tractions.push_back({X, seg.normals[i], tbar, seg.weights[i]});
      }
    }
  }
  return prob;
}

LossBreakdown accumulate_loss(Formulation form, const NetworkShape& shape,
                              Activation act, const OutputTransform& tf,
                              const ProblemDefinition& prob,
                              const LossWeights& weights,
                              ad::LossAccumulator& acc) {
  return run_loss<Var>(
      form, shape, act, tf, prob, weights, acc.theta().data(),
      [&acc] { acc.begin_term(); },
      [&acc](Var term, double w) { acc.commit(term, w); });
}

LossBreakdown loss_value(Formulation form, const NetworkParams& params,
                         const OutputTransform& tf,
                         const ProblemDefinition& prob,
                         const LossWeights& weights) {
  return run_loss<double>(
      form, params.shape, params.activation, tf, prob, weights,
      params.theta.data(), [] {}, [](double, double) {});
}

double traction_mismatch(const NetworkParams& params, const OutputTransform& tf,
                         const ProblemDefinition& prob) {
  if (prob.tractions.empty()) return 0.0;
  NetWorkspace<double> ws;
  std::vector<double> terms;
  terms.reserve(prob.tractions.size());
  for (const TractionSample& ts : prob.tractions) {
    DualBundle b = evaluate(params.shape, params.activation,
                            params.theta.data(), tf, ts.X, 1, ws);
    Mat2 F = deformation_gradient(b.grad_u);
    if (!(det(F) > prob.j_floor)) {
      const double gap = det(F) - prob.j_floor;
      terms.push_back(prob.penalty_scale * gap * gap);
      continue;
    }
    Mat2 P = first_pk_stress(F, prob.material);
    const double tx = P.a11 * ts.N.x + P.a12 * ts.N.y - ts.tbar.x;
    const double ty = P.a21 * ts.N.x + P.a22 * ts.N.y - ts.tbar.y;
    terms.push_back(tx * tx + ty * ty);
  }
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

FieldSnapshot snapshot_fields(Formulation form, const NetworkParams& params,
                              const OutputTransform& tf,
                              const ProblemDefinition& prob) {
  FieldSnapshot snap;
  snap.X = prob.domain_points;
  snap.u.reserve(snap.X.size());
  snap.P.reserve(snap.X.size());
  snap.psi.reserve(snap.X.size());
  NetWorkspace<double> ws;
  for (const Vec2& X : snap.X) {
    DualBundle b = evaluate(params.shape, params.activation,
                            params.theta.data(), tf, X, 1, ws);
    snap.u.push_back({b.u.x, b.u.y});
    Mat2 F = deformation_gradient(b.grad_u);
    const double J = det(F);
    Mat2 Pc{};
    double psi;
    if (J > prob.j_floor) {
      Pc = first_pk_stress(F, prob.material);
      psi = strain_energy(kinematics(F), prob.material);
    } else {
      const double gap = J - prob.j_floor;
      psi = prob.penalty_scale * gap * gap;
    }
    snap.P.push_back(form == Formulation::mdem && b.has_head ? b.p_head : Pc);
    snap.psi.push_back(psi);
  }
  return snap;
}

}  // namespace mdem
