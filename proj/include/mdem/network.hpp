#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mdem/errors.hpp"
#include "mdem/tape.hpp"
#include "mdem/tensor.hpp"
#include "mdem/transform.hpp"

namespace mdem {

enum class Activation { tanh_fn, softplus_fn };

struct ActivationTraits {
  bool has_second = true;
};

ActivationTraits activation_traits(Activation act);

/// Layer widths of a fully connected stack, input width first. Hidden layers
/// use the configured activation; the output layer is linear.
struct NetworkShape {
  std::vector<int> widths;

  int layer_count() const { return static_cast<int>(widths.size()) - 1; }
  int output_width() const { return widths.back(); }
  int64_t param_count() const;
};

/// Shape, activation, and the flat parameter vector. Layout: for each layer
/// in order, the weight matrix row-major (out x in) followed by the bias.
struct NetworkParams {
  NetworkShape shape;
  Activation activation = Activation::tanh_fn;
  std::vector<double> theta;
};

/// Glorot-uniform weights, zero biases, reproducible for a given seed
/// independent of platform. Input width must be 2.
NetworkParams init_network(const std::vector<int>& widths, Activation act, uint64_t seed);

/// Reusable buffers for one forward pass; outputs land in a/d1/d2/h11/h12/h22
/// (h-buffers only written at order 2, d-buffers only at order >= 1).
template <class T>
struct NetWorkspace {
  std::vector<T> a, d1, d2, h11, h12, h22;
  std::vector<T> za, zd1, zd2, zh11, zh12, zh22;
};

namespace net_detail {

template <class T>
void act_eval(Activation act, const T& z, int order, T& s, T& s1, T& s2) {
  using std::tanh;
  using ad::tanh;
  using ad::softplus;
  using ad::logistic;
  switch (act) {
    case Activation::tanh_fn: {
      s = tanh(z);
      s1 = 1.0 - s * s;
      if (order >= 2) s2 = -2.0 * s * s1;
      break;
    }
    case Activation::softplus_fn: {
      s = softplus(z);
      s1 = logistic(z);
      if (order >= 2) s2 = s1 * (1.0 - s1);
      break;
    }
  }
}

template <class T>
void resize_all(NetWorkspace<T>& ws, size_t n, int order) {
  ws.a.resize(n);
  ws.za.resize(n);
  if (order >= 1) {
    ws.d1.resize(n);
    ws.d2.resize(n);
    ws.zd1.resize(n);
    ws.zd2.resize(n);
  }
  if (order >= 2) {
    ws.h11.resize(n);
    ws.h12.resize(n);
    ws.h22.resize(n);
    ws.zh11.resize(n);
    ws.zh12.resize(n);
    ws.zh22.resize(n);
  }
}

}  // namespace net_detail

/// Forward pass propagating the network value together with its first (and
/// optionally second) derivatives with respect to the spatial input, layer by
/// layer in closed form. The scalar type carries the parameters: plain double
/// for evaluation, ad::Var for taped training so a later reverse sweep also
/// differentiates the propagated input derivatives with respect to the
/// parameters.
template <class T>
void forward_jet(const NetworkShape& shape, Activation act, const T* theta, Vec2 x, int order,
                 NetWorkspace<T>& ws) {
  using ad::fused_dot;
  if (order < 0 || order > 2) throw UnsupportedOrder("forward_jet: order must be 0, 1 or 2");
  if (order == 2 && !activation_traits(act).has_second)
    throw UnsupportedOrder("forward_jet: activation has no second derivative");
  const auto& w = shape.widths;
  int layers = shape.layer_count();
  if (layers < 1 || w[0] != 2) throw BadArchitecture("forward_jet: need input width 2");

  size_t max_width = 0;
  for (int width : w) max_width = std::max(max_width, static_cast<size_t>(width));
  net_detail::resize_all(ws, max_width, order);

  // First affine layer: the spatial jacobian of W x + b is W itself.
  const T* row = theta;
  int w_out = w[1];
  const T* bias = theta + 2 * w_out;
  for (int i = 0; i < w_out; ++i, row += 2) {
    ws.za[i] = row[0] * x.x + row[1] * x.y + bias[i];
    if (order >= 1) {
      ws.zd1[i] = row[0];
      ws.zd2[i] = row[1];
    }
    if (order >= 2) {
      ws.zh11[i] = T(0);
      ws.zh12[i] = T(0);
      ws.zh22[i] = T(0);
    }
  }
  size_t offset = static_cast<size_t>(2 * w_out + w_out);

  for (int layer = 1; layer < layers; ++layer) {
    int width = w[layer];
    // Hidden activation on z-buffers into a-buffers.
    for (int i = 0; i < width; ++i) {
      T s{}, s1{}, s2{};
      net_detail::act_eval(act, ws.za[i], order, s, s1, s2);
      ws.a[i] = s;
      if (order >= 1) {
        ws.d1[i] = s1 * ws.zd1[i];
        ws.d2[i] = s1 * ws.zd2[i];
      }
      if (order >= 2) {
        ws.h11[i] = s2 * ws.zd1[i] * ws.zd1[i] + s1 * ws.zh11[i];
        ws.h12[i] = s2 * ws.zd1[i] * ws.zd2[i] + s1 * ws.zh12[i];
        ws.h22[i] = s2 * ws.zd2[i] * ws.zd2[i] + s1 * ws.zh22[i];
      }
    }
    // Affine layer on a-buffers into z-buffers.
    int w_in = width;
    w_out = w[layer + 1];
    const T* weights = theta + offset;
    bias = weights + static_cast<size_t>(w_in) * w_out;
    for (int i = 0; i < w_out; ++i) {
      const T* r = weights + static_cast<size_t>(i) * w_in;
      ws.za[i] = fused_dot(r, ws.a.data(), w_in, &bias[i]);
      if (order >= 1) {
        ws.zd1[i] = fused_dot(r, ws.d1.data(), w_in, nullptr);
        ws.zd2[i] = fused_dot(r, ws.d2.data(), w_in, nullptr);
      }
      if (order >= 2) {
        ws.zh11[i] = fused_dot(r, ws.h11.data(), w_in, nullptr);
        ws.zh12[i] = fused_dot(r, ws.h12.data(), w_in, nullptr);
        ws.zh22[i] = fused_dot(r, ws.h22.data(), w_in, nullptr);
      }
    }
    offset += static_cast<size_t>(w_in) * w_out + static_cast<size_t>(w_out);
  }

  // Expose the final affine output in the a-buffers.
  ws.a.swap(ws.za);
  if (order >= 1) {
    ws.d1.swap(ws.zd1);
    ws.d2.swap(ws.zd2);
  }
  if (order >= 2) {
    ws.h11.swap(ws.zh11);
    ws.h12.swap(ws.zh12);
    ws.h22.swap(ws.zh22);
  }
}

/// Network outputs after the a-priori transform: displacement, its spatial
/// gradient, optional second derivatives (order 2), and the stress head when
/// the network carries one (output width 6).
template <class T>
struct DualBundleT {
  Vec2T<T> u;
  Mat2T<T> grad_u;
  std::array<T, 6> d2u{};  // u1_xx, u1_xy, u1_yy, u2_xx, u2_xy, u2_yy
  bool has_second = false;
  Mat2T<T> p_head{};
  bool has_head = false;
};

using DualBundle = DualBundleT<double>;

template <class T>
DualBundleT<T> evaluate(const NetworkShape& shape, Activation act, const T* theta,
                        const OutputTransform& tf, Vec2 x, int order, NetWorkspace<T>& ws) {
  forward_jet(shape, act, theta, x, order, ws);
  int out_width = shape.output_width();
  if (out_width != 2 && out_width != 6)
    throw BadArchitecture("evaluate: output width must be 2 (displacement) or 6 (with stress head)");

  DualBundleT<T> bundle;
  T* u_parts[2] = {&bundle.u.x, &bundle.u.y};
  T* g_parts[2][2] = {{&bundle.grad_u.a11, &bundle.grad_u.a12},
                      {&bundle.grad_u.a21, &bundle.grad_u.a22}};
  for (int i = 0; i < 2; ++i) {
    Jet2 A = tf.shift_u[static_cast<size_t>(i)].eval_jet(x);
    Jet2 B = tf.scale_u[static_cast<size_t>(i)].eval_jet(x);
    const T& z = ws.a[i];
    *u_parts[i] = A.v + B.v * z;
    if (order >= 1) {
      *g_parts[i][0] = A.dx + B.dx * z + B.v * ws.d1[i];
      *g_parts[i][1] = A.dy + B.dy * z + B.v * ws.d2[i];
    }
    if (order >= 2) {
      bundle.d2u[static_cast<size_t>(3 * i + 0)] =
          A.dxx + B.dxx * z + 2.0 * B.dx * ws.d1[i] + B.v * ws.h11[i];
      bundle.d2u[static_cast<size_t>(3 * i + 1)] =
          A.dxy + B.dxy * z + B.dx * ws.d2[i] + B.dy * ws.d1[i] + B.v * ws.h12[i];
      bundle.d2u[static_cast<size_t>(3 * i + 2)] =
          A.dyy + B.dyy * z + 2.0 * B.dy * ws.d2[i] + B.v * ws.h22[i];
    }
  }
  bundle.has_second = order >= 2;

  if (out_width == 6) {
    T* p_parts[4] = {&bundle.p_head.a11, &bundle.p_head.a12, &bundle.p_head.a21,
                     &bundle.p_head.a22};
    for (int k = 0; k < 4; ++k) {
      double shift = tf.shift_p[static_cast<size_t>(k)].eval(x);
      double scale = tf.scale_p[static_cast<size_t>(k)].eval(x);
      *p_parts[k] = shift + scale * ws.a[2 + k];
    }
    bundle.has_head = true;
  }
  return bundle;
}

/// Convenience plain-double evaluation with a throwaway workspace.
inline DualBundle evaluate_plain(const NetworkParams& params, const OutputTransform& tf, Vec2 x,
                                 int order) {
  NetWorkspace<double> ws;
  return evaluate(params.shape, params.activation, params.theta.data(), tf, x, order, ws);
}

}  // namespace mdem
