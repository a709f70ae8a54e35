#ifndef NPS_ERRORS_HPP
#define NPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nps {

/// Invalid curve/surface parameters (nonpositive radii, self-intersection, ...).
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// The assembled single-layer matrix is not positive definite.
struct PositivityError : std::runtime_error {
  explicit PositivityError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical contract was violated (symmetrizability residual too large,
/// branch cut hit, non-convergent extrapolation, ...).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed descriptor / config input.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nps

#endif  // NPS_ERRORS_HPP
