#pragma once

#include <array>

#include "mdem/expression.hpp"

namespace mdem {

/// A-priori output transform: displacement u_i = shift_u[i] + scale_u[i] * z_i
/// with closed-form coordinate expressions, so essential boundary values hold
/// for arbitrary network parameters. The stress head transform acts the same
/// way on the four extra outputs (row-major P11, P12, P21, P22) and defaults
/// to the identity. In trained mode the transform is the identity and
/// boundary displacement data enters the loss instead.
struct OutputTransform {
  enum class Mode { a_priori, trained };

  Mode mode = Mode::a_priori;
  std::array<Expr, 2> shift_u{Expr::constant(0.0), Expr::constant(0.0)};
  std::array<Expr, 2> scale_u{Expr::constant(1.0), Expr::constant(1.0)};
  std::array<Expr, 4> shift_p{Expr::constant(0.0), Expr::constant(0.0), Expr::constant(0.0),
                              Expr::constant(0.0)};
  std::array<Expr, 4> scale_p{Expr::constant(1.0), Expr::constant(1.0), Expr::constant(1.0),
                              Expr::constant(1.0)};
};

}  // namespace mdem
