#pragma once

#include <array>
#include <cmath>

namespace mdem {

/// 2-vector over an arbitrary scalar type (double for plain evaluation,
/// ad::Var for taped evaluation).
template <class T>
struct Vec2T {
  T x{};
  T y{};
};

using Vec2 = Vec2T<double>;

template <class T>
Vec2T<T> operator+(const Vec2T<T>& a, const Vec2T<T>& b) {
  return {a.x + b.x, a.y + b.y};
}

template <class T>
Vec2T<T> operator-(const Vec2T<T>& a, const Vec2T<T>& b) {
  return {a.x - b.x, a.y - b.y};
}

template <class T, class S>
Vec2T<T> operator*(const S& s, const Vec2T<T>& a) {
  return {s * a.x, s * a.y};
}

template <class T>
T dot(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.x + a.y * b.y;
}

inline double norm(const Vec2& a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// 2x2 second-order tensor with named entries, row index first.
template <class T>
struct Mat2T {
  T a11{};
  T a12{};
  T a21{};
  T a22{};

  static Mat2T identity() { return {T(1), T(0), T(0), T(1)}; }
};

using Mat2 = Mat2T<double>;

template <class T>
Mat2T<T> operator+(const Mat2T<T>& a, const Mat2T<T>& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

template <class T>
Mat2T<T> operator-(const Mat2T<T>& a, const Mat2T<T>& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

template <class T, class S>
Mat2T<T> operator*(const S& s, const Mat2T<T>& a) {
  return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}

template <class T>
Mat2T<T> matmul(const Mat2T<T>& a, const Mat2T<T>& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

template <class T>
Vec2T<T> matvec(const Mat2T<T>& a, const Vec2T<T>& v) {
  return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
}

template <class T>
Mat2T<T> transpose(const Mat2T<T>& a) {
  return {a.a11, a.a21, a.a12, a.a22};
}

template <class T>
T det(const Mat2T<T>& a) {
  return a.a11 * a.a22 - a.a12 * a.a21;
}

template <class T>
T trace(const Mat2T<T>& a) {
  return a.a11 + a.a22;
}

/// Inverse via the adjugate; the caller is responsible for det != 0.
template <class T>
Mat2T<T> inverse(const Mat2T<T>& a) {
  T inv_det = T(1) / det(a);
  return {inv_det * a.a22, inv_det * (T(0) - a.a12), inv_det * (T(0) - a.a21),
          inv_det * a.a11};
}

/// Frobenius inner product a : b.
template <class T>
T ddot(const Mat2T<T>& a, const Mat2T<T>& b) {
  return a.a11 * b.a11 + a.a12 * b.a12 + a.a21 * b.a21 + a.a22 * b.a22;
}

template <class T>
T frobenius_squared(const Mat2T<T>& a) {
  return ddot(a, a);
}

inline double frobenius_norm(const Mat2& a) { return std::sqrt(frobenius_squared(a)); }

/// Rank-four tensor A_{iJkL} over {1,2}^4, stored with each index zero-based.
template <class T>
struct Tensor4T {
  std::array<T, 16> a{};

  T& operator()(int i, int j, int k, int l) { return a[((i * 2 + j) * 2 + k) * 2 + l]; }
  const T& operator()(int i, int j, int k, int l) const {
    return a[((i * 2 + j) * 2 + k) * 2 + l];
  }
};

using Tensor4 = Tensor4T<double>;

/// Contraction (A : H)_{iJ} = A_{iJkL} H_{kL}.
template <class T>
Mat2T<T> contract(const Tensor4T<T>& a, const Mat2T<T>& h) {
  Mat2T<T> r{};
  const T* p = a.a.data();
  T entries[4] = {h.a11, h.a12, h.a21, h.a22};
  T out[4] = {T(0), T(0), T(0), T(0)};
  for (int ij = 0; ij < 4; ++ij) {
    T s = T(0);
    for (int kl = 0; kl < 4; ++kl) s = s + p[ij * 4 + kl] * entries[kl];
    out[ij] = s;
  }
  return {out[0], out[1], out[2], out[3]};
}

}  // namespace mdem
