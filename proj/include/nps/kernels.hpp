#ifndef NPS_KERNELS_HPP
#define NPS_KERNELS_HPP

#include <Eigen/Dense>

#include <cmath>

#include "nps/geometry.hpp"

namespace nps {

// Fundamental solutions of -Laplace (Delta E = -delta).

/// 2D logarithmic kernel E(x,y) = -(1/2pi) ln|x-y|.
inline double log_kernel(const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  return -std::log((x - y).norm()) / (2.0 * M_PI);
}

/// 3D Newton kernel E(x,y) = 1/(4 pi |x-y|).
inline double newton_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return 1.0 / (4.0 * M_PI * (x - y).norm());
}

/// grad_x E(x,y) in 2D: -(1/2pi) (x-y)/|x-y|^2.
inline Eigen::Vector2d log_kernel_gradient(const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  const Eigen::Vector2d d = x - y;
  return -d / (2.0 * M_PI * d.squaredNorm());
}

/// Double-layer kernel dE/dn_y (x,y) = -(1/2pi) <y-x, n_y>/|x-y|^2 (2D, off-diagonal).
inline double double_layer_kernel(const Eigen::Vector2d& x, const Eigen::Vector2d& y,
                                  const Eigen::Vector2d& normal_y) {
  const Eigen::Vector2d d = y - x;
  return -d.dot(normal_y) / (2.0 * M_PI * d.squaredNorm());
}

/// Boundary kernel of K: k(x,y) = (1/2pi) <y-x, n_y>/|x-y|^2, with the smooth
/// diagonal limit kappa(x)/(4 pi). The operator uses the kernel 2*k so that
/// K 1 = 1. The adjoint kernel is evaluated through the same code path,
/// kstar(x,y) = k(y,x), so adjoint symmetry holds exactly.
inline double k_value(const CurvePoint& x, const CurvePoint& y) {
  const Eigen::Vector2d d = y.position - x.position;
  const double r2 = d.squaredNorm();
  if (r2 == 0.0) return x.curvature / (4.0 * M_PI);
  return d.dot(y.normal) / (2.0 * M_PI * r2);
}

inline double kstar_value(const CurvePoint& x, const CurvePoint& y) { return k_value(y, x); }

}  // namespace nps

#endif  // NPS_KERNELS_HPP
