#pragma once

#include <stdexcept>
#include <string>

namespace mdem {

/// Deformation state with non-positive volume ratio where one is required.
struct NonPositiveJacobian : std::runtime_error {
  explicit NonPositiveJacobian(const std::string& what) : std::runtime_error(what) {}
};

/// Network layer sizes that cannot form a valid feed-forward stack.
struct BadArchitecture : std::invalid_argument {
  explicit BadArchitecture(const std::string& what) : std::invalid_argument(what) {}
};

/// Derivative order requested that the activation cannot supply.
struct UnsupportedOrder : std::invalid_argument {
  explicit UnsupportedOrder(const std::string& what) : std::invalid_argument(what) {}
};

/// Sampling produced no usable points.
struct EmptyDomain : std::runtime_error {
  explicit EmptyDomain(const std::string& what) : std::runtime_error(what) {}
};

/// Point set unfit for triangulation (fewer than three points or all collinear).
struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

/// Field array length does not match the point set it is integrated over.
struct SizeMismatch : std::invalid_argument {
  explicit SizeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Query point too far from the boundary segment it was attributed to.
struct PointOffBoundary : std::runtime_error {
  explicit PointOffBoundary(const std::string& what) : std::runtime_error(what) {}
};

/// Query point not covered by any element of the mesh.
struct PointOutsideMesh : std::runtime_error {
  explicit PointOutsideMesh(const std::string& what) : std::runtime_error(what) {}
};

/// Nonlinear solve exhausted its iteration or bisection budget.
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file rejected (syntax, unknown key, or invalid value).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Two runs compared on different point sets.
struct PointSetMismatch : std::runtime_error {
  explicit PointSetMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mdem
