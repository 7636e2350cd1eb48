#pragma once

#include <cmath>

#include "mdem/errors.hpp"
#include "mdem/tensor.hpp"

namespace mdem {

inline double value_of(double x) { return x; }

/// Lame constants of the compressible neo-Hookean model.
struct MaterialParams {
  double lambda = 0.0;
  double mu = 0.0;

  static MaterialParams from_youngs_poisson(double youngs, double poisson) {
    MaterialParams m;
    m.lambda = youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
    m.mu = youngs / (2.0 * (1.0 + poisson));
    return m;
  }
};

/// Deformation gradient together with its determinant and right Cauchy-Green tensor.
template <class T>
struct KinematicStateT {
  Mat2T<T> F;
  T J;
  Mat2T<T> C;
};

using KinematicState = KinematicStateT<double>;

/// F = I + Grad u.
template <class T>
Mat2T<T> deformation_gradient(const Mat2T<T>& grad_u) {
  return Mat2T<T>::identity() + grad_u;
}

template <class T>
KinematicStateT<T> kinematics(const Mat2T<T>& F) {
  return {F, det(F), matmul(transpose(F), F)};
}

/// Plane-strain compressible neo-Hookean stored energy density,
/// psi = lambda/4 (J^2 - 1 - 2 ln J) + mu/2 (tr C - 2 - 2 ln J).
/// Zero at the undeformed state.
template <class T>
T strain_energy(const KinematicStateT<T>& state, const MaterialParams& mat) {
  if (!(value_of(state.J) > 0.0))
    throw NonPositiveJacobian("strain_energy: det F must be positive");
  using std::log;
  T log_j = log(state.J);
  T volumetric = 0.25 * mat.lambda * (state.J * state.J - 1.0 - 2.0 * log_j);
  T isochoric = 0.5 * mat.mu * (trace(state.C) - 2.0 - 2.0 * log_j);
  return volumetric + isochoric;
}

/// First Piola-Kirchhoff stress P = dpsi/dF = mu (F - F^-T) + lambda/2 (J^2 - 1) F^-T.
template <class T>
Mat2T<T> first_pk_stress(const Mat2T<T>& F, const MaterialParams& mat) {
  T J = det(F);
  if (!(value_of(J) > 0.0))
    throw NonPositiveJacobian("first_pk_stress: det F must be positive");
  Mat2T<T> f_inv_t = transpose(inverse(F));
  T pressure_like = 0.5 * mat.lambda * (J * J - 1.0);
  return mat.mu * (F - f_inv_t) + pressure_like * f_inv_t;
}

/// Material tangent A_{iJkL} = dP_{iJ}/dF_{kL}; carries major symmetry
/// A_{iJkL} = A_{kLiJ}.
template <class T>
Tensor4T<T> pk_stress_tangent(const Mat2T<T>& F, const MaterialParams& mat) {
  T J = det(F);
  if (!(value_of(J) > 0.0))
    throw NonPositiveJacobian("pk_stress_tangent: det F must be positive");
  Mat2T<T> G = transpose(inverse(F));  // G_{iJ} = (F^-T)_{iJ}
  T g[2][2] = {{G.a11, G.a12}, {G.a21, G.a22}};
  T c_vol = mat.lambda * J * J;
  T c_geo = mat.mu - 0.5 * mat.lambda * (J * J - 1.0);
  Tensor4T<T> A;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          T term = c_vol * g[i][j] * g[k][l] + c_geo * g[i][l] * g[k][j];
          if (i == k && j == l) term = term + mat.mu;
          A(i, j, k, l) = term;
        }
  return A;
}

}  // namespace mdem
