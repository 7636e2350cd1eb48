#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdem/expression.hpp"
#include "mdem/material.hpp"
#include "mdem/network.hpp"
#include "mdem/tape.hpp"

using namespace mdem;
using ad::Var;

namespace {

// Shared toy loss: weighted stored energy over a few points plus a traction
// mismatch term, evaluated through the same templated code for double and Var.
OutputTransform toy_transform() {
  OutputTransform tf;
  tf.scale_u = {Expr::parse("0.05"), Expr::parse("0.05")};
  return tf;
}

template <class T>
T toy_loss(const NetworkParams& ref, const T* theta, const std::vector<Vec2>& pts) {
  OutputTransform tf = toy_transform();
  NetWorkspace<T> ws;
  MaterialParams mat{1.2, 0.8};
  T total(0.0);
  for (size_t k = 0; k < pts.size(); ++k) {
    auto bundle = evaluate(ref.shape, ref.activation, theta, tf, pts[k], 1, ws);
    auto state = kinematics(deformation_gradient(bundle.grad_u));
    T psi = strain_energy(state, mat);
    Mat2T<T> P = first_pk_stress(state.F, mat);
    Vec2T<T> tr = matvec(P, Vec2T<T>{T(1.0), T(0.0)});
    T mismatch = (tr.x - 0.3) * (tr.x - 0.3) + tr.y * tr.y;
    total = total + (0.7 + 0.1 * double(k)) * psi + 0.05 * mismatch;
  }
  return total;
}

std::vector<Vec2> toy_points() {
  return {{0.1, 0.2}, {0.6, 0.4}, {0.3, 0.9}, {0.8, 0.7}, {0.5, 0.5}};
}

}  // namespace

TEST_CASE("tape reverse sweep on elementary expressions") {
  std::vector<double> theta = {2.0, 3.0};
  std::vector<double> grad(2, 0.0);
  double value = ad::loss_gradient(
      theta,
      [](std::span<const Var> t) {
        Var x = t[0], y = t[1];
        return x * y + x + ad::log(y) / x;
      },
      grad);
  CHECK(value == doctest::Approx(2.0 * 3.0 + 2.0 + std::log(3.0) / 2.0));
  // d/dx = y + 1 - log(y)/x^2, d/dy = x + 1/(x*y)
  CHECK(grad[0] == doctest::Approx(3.0 + 1.0 - std::log(3.0) / 4.0).epsilon(1e-14));
  CHECK(grad[1] == doctest::Approx(2.0 + 1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("constants fold without touching the tape") {
  ad::Tape tape;
  ad::TapeScope scope(&tape);
  Var a(2.0);
  Var b = a * 3.0 + 1.0;  // all constants
  CHECK(b.id == -1);
  CHECK(b.v == 7.0);
  CHECK(tape.node_count() == 0);
}

TEST_CASE("fused dot product gradient") {
  std::vector<double> theta = {1.0, -2.0, 0.5, 3.0, 0.25, -1.5};  // w[3], x[3]
  std::vector<double> grad(6, 0.0);
  double value = ad::loss_gradient(
      theta,
      [](std::span<const Var> t) {
        return ad::fused_dot(t.data(), t.data() + 3, 3, nullptr) + 0.5;
      },
      grad);
  CHECK(value == doctest::Approx(1.0 * 3.0 - 2.0 * 0.25 + 0.5 * -1.5 + 0.5));
  CHECK(grad[0] == doctest::Approx(3.0));
  CHECK(grad[1] == doctest::Approx(0.25));
  CHECK(grad[2] == doctest::Approx(-1.5));
  CHECK(grad[3] == doctest::Approx(1.0));
  CHECK(grad[4] == doctest::Approx(-2.0));
  CHECK(grad[5] == doctest::Approx(0.5));
}

TEST_CASE("single linear layer: jacobian is the weight matrix, hessian zero") {
  NetworkParams p = init_network({2, 3}, Activation::tanh_fn, 7);
  // theta = W (3x2 row-major) then b
  NetWorkspace<double> ws;
  forward_jet(p.shape, p.activation, p.theta.data(), {0.3, -0.7}, 2, ws);
  for (int i = 0; i < 3; ++i) {
    CHECK(ws.d1[i] == p.theta[2 * i + 0]);
    CHECK(ws.d2[i] == p.theta[2 * i + 1]);
    CHECK(ws.h11[i] == 0.0);
    CHECK(ws.h12[i] == 0.0);
    CHECK(ws.h22[i] == 0.0);
  }
}

TEST_CASE("spatial jacobian of a deep tanh network matches finite differences") {
  NetworkParams p = init_network({2, 60, 60, 60, 60, 60, 60, 2}, Activation::tanh_fn, 42);
  Vec2 x{0.37, -0.21};
  NetWorkspace<double> ws;
  forward_jet(p.shape, p.activation, p.theta.data(), x, 1, ws);
  double jac[2][2] = {{ws.d1[0], ws.d2[0]}, {ws.d1[1], ws.d2[1]}};

  double h = 1e-6;
  for (int axis = 0; axis < 2; ++axis) {
    Vec2 xp = x, xm = x;
    (axis == 0 ? xp.x : xp.y) += h;
    (axis == 0 ? xm.x : xm.y) -= h;
    forward_jet(p.shape, p.activation, p.theta.data(), xp, 0, ws);
    double yp[2] = {ws.a[0], ws.a[1]};
    forward_jet(p.shape, p.activation, p.theta.data(), xm, 0, ws);
    double ym[2] = {ws.a[0], ws.a[1]};
    for (int out = 0; out < 2; ++out) {
      double fd = (yp[out] - ym[out]) / (2.0 * h);
      CHECK(jac[out][axis] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("spatial hessian matches finite differences of the jacobian") {
  for (Activation act : {Activation::tanh_fn, Activation::softplus_fn}) {
    NetworkParams p = init_network({2, 8, 2}, act, 11);
    Vec2 x{0.0, 0.0};
    NetWorkspace<double> ws;
    forward_jet(p.shape, p.activation, p.theta.data(), x, 2, ws);
    double hess[2][3];
    for (int out = 0; out < 2; ++out) {
      hess[out][0] = ws.h11[out];
      hess[out][1] = ws.h12[out];
      hess[out][2] = ws.h22[out];
    }
    double h = 1e-5;
    for (int axis = 0; axis < 2; ++axis) {
      Vec2 xp = x, xm = x;
      (axis == 0 ? xp.x : xp.y) += h;
      (axis == 0 ? xm.x : xm.y) -= h;
      forward_jet(p.shape, p.activation, p.theta.data(), xp, 1, ws);
      double jp[2][2] = {{ws.d1[0], ws.d2[0]}, {ws.d1[1], ws.d2[1]}};
      forward_jet(p.shape, p.activation, p.theta.data(), xm, 1, ws);
      double jm[2][2] = {{ws.d1[0], ws.d2[0]}, {ws.d1[1], ws.d2[1]}};
      for (int out = 0; out < 2; ++out)
        for (int col = 0; col < 2; ++col) {
          double fd = (jp[out][col] - jm[out][col]) / (2.0 * h);
          int slot = (axis == 0) ? col : col + 1;  // xx, xy, yy
          CHECK(hess[out][slot] == doctest::Approx(fd).epsilon(2e-5));
        }
    }
  }
}

TEST_CASE("order-two evaluation reproduces order-one values bitwise") {
  NetworkParams p = init_network({2, 12, 12, 2}, Activation::tanh_fn, 3);
  NetWorkspace<double> w1, w2;
  for (double xx : {0.1, 0.5, 0.9})
    for (double yy : {0.2, 0.8}) {
      forward_jet(p.shape, p.activation, p.theta.data(), {xx, yy}, 1, w1);
      forward_jet(p.shape, p.activation, p.theta.data(), {xx, yy}, 2, w2);
      for (int i = 0; i < 2; ++i) {
        CHECK(w1.a[i] == w2.a[i]);
        CHECK(w1.d1[i] == w2.d1[i]);
        CHECK(w1.d2[i] == w2.d2[i]);
      }
    }
}

TEST_CASE("parameter gradient of a quadratic output norm") {
  // Single linear layer, loss = |y|^2, so dL/dW_ij = 2 y_i x_j, dL/db_i = 2 y_i.
  NetworkParams p = init_network({2, 2}, Activation::tanh_fn, 5);
  Vec2 x{0.4, -0.9};
  std::vector<double> grad(p.theta.size(), 0.0);
  ad::loss_gradient(
      p.theta,
      [&](std::span<const Var> t) {
        NetWorkspace<Var> ws;
        forward_jet(p.shape, p.activation, t.data(), x, 0, ws);
        return ws.a[0] * ws.a[0] + ws.a[1] * ws.a[1];
      },
      grad);
  DualBundle ref = evaluate_plain(p, OutputTransform{}, x, 1);
  double y[2] = {ref.u.x, ref.u.y};
  double xs[2] = {x.x, x.y};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j)
      CHECK(grad[static_cast<size_t>(2 * i + j)] == doctest::Approx(2.0 * y[i] * xs[j]).epsilon(1e-13));
    CHECK(grad[4 + static_cast<size_t>(i)] == doctest::Approx(2.0 * y[i]).epsilon(1e-13));
  }
}

TEST_CASE("full parameter gradient through energy and stress matches finite differences") {
  NetworkParams p = init_network({2, 8, 8, 2}, Activation::tanh_fn, 99);
  auto pts = toy_points();

  std::vector<double> grad(p.theta.size(), 0.0);
  double base = ad::loss_gradient(
      p.theta, [&](std::span<const Var> t) { return toy_loss(p, t.data(), pts); }, grad);

  std::vector<double> theta = p.theta;
  double dot = 0.0, gg = 0.0, ff = 0.0;
  for (size_t i = 0; i < theta.size(); ++i) {
    double h = 1e-6 * std::max(1.0, std::abs(theta[i]));
    double saved = theta[i];
    theta[i] = saved + h;
    double up = toy_loss(p, theta.data(), pts);
    theta[i] = saved - h;
    double um = toy_loss(p, theta.data(), pts);
    theta[i] = saved;
    double fd = (up - um) / (2.0 * h);
    dot += fd * grad[i];
    gg += grad[i] * grad[i];
    ff += fd * fd;
  }
  CHECK(base == doctest::Approx(toy_loss(p, p.theta.data(), pts)));
  // Norm-wise agreement of the whole gradient vector.
  double rel = std::sqrt(std::max(0.0, gg + ff - 2.0 * dot)) / std::sqrt(std::max(ff, 1e-300));
  CHECK(rel < 1e-5);
}

TEST_CASE("chunked accumulation agrees with one-shot reverse mode") {
  NetworkParams p = init_network({2, 6, 6, 2}, Activation::tanh_fn, 123);
  auto pts = toy_points();

  std::vector<double> grad_once(p.theta.size(), 0.0);
  double value_once = ad::loss_gradient(
      p.theta, [&](std::span<const Var> t) { return toy_loss(p, t.data(), pts); }, grad_once);

  ad::LossAccumulator acc(p.theta);
  OutputTransform tf = toy_transform();
  MaterialParams mat{1.2, 0.8};
  NetWorkspace<Var> ws;
  for (size_t k = 0; k < pts.size(); ++k) {
    acc.begin_term();
    auto bundle = evaluate(p.shape, p.activation, acc.theta().data(), tf, pts[k], 1, ws);
    auto state = kinematics(deformation_gradient(bundle.grad_u));
    Var psi = strain_energy(state, mat);
    Mat2T<Var> P = first_pk_stress(state.F, mat);
    Vec2T<Var> tr = matvec(P, Vec2T<Var>{Var(1.0), Var(0.0)});
    Var mismatch = (tr.x - 0.3) * (tr.x - 0.3) + tr.y * tr.y;
    acc.commit(psi + (0.05 / (0.7 + 0.1 * double(k))) * mismatch, 0.7 + 0.1 * double(k));
  }
  CHECK(acc.value() == doctest::Approx(value_once).epsilon(1e-13));
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < grad_once.size(); ++i) {
    num += (acc.grad()[i] - grad_once[i]) * (acc.grad()[i] - grad_once[i]);
    den += grad_once[i] * grad_once[i];
  }
  CHECK(std::sqrt(num) <= 1e-12 * std::sqrt(std::max(den, 1e-300)));
}

TEST_CASE("gradient accumulation is traversal-order independent to 1e-12") {
  NetworkParams p = init_network({2, 6, 6, 2}, Activation::tanh_fn, 3001);
  auto pts = toy_points();
  OutputTransform tf = toy_transform();
  MaterialParams mat{1.0, 1.0};

  auto run = [&](const std::vector<size_t>& order) {
    ad::LossAccumulator acc(p.theta);
    NetWorkspace<Var> ws;
    for (size_t k : order) {
      acc.begin_term();
      auto bundle = evaluate(p.shape, p.activation, acc.theta().data(), tf, pts[k], 1, ws);
      auto state = kinematics(deformation_gradient(bundle.grad_u));
      acc.commit(strain_energy(state, mat), 1.0 / double(pts.size()));
    }
    std::vector<double> g(acc.grad().begin(), acc.grad().end());
    g.push_back(acc.value());
    return g;
  };

  auto fwd = run({0, 1, 2, 3, 4});
  auto rev = run({4, 2, 0, 3, 1});
  for (size_t i = 0; i < fwd.size(); ++i)
    CHECK(rev[i] == doctest::Approx(fwd[i]).epsilon(1e-12));
}

TEST_CASE("unsupported derivative order is rejected") {
  NetworkParams p = init_network({2, 4, 2}, Activation::tanh_fn, 1);
  NetWorkspace<double> ws;
  CHECK_THROWS_AS(forward_jet(p.shape, p.activation, p.theta.data(), {0.0, 0.0}, 3, ws),
                  UnsupportedOrder);
}
