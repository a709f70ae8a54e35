#ifndef NPS_NYSTROM_HPP
#define NPS_NYSTROM_HPP

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "nps/geometry.hpp"

namespace nps {

/// Uniform parameter grid t_i = 2 pi i / n on a closed curve with the
/// trapezoid weights w_i = |x'(t_i)| 2 pi / n. n must be even and >= 8.
struct BoundaryGrid {
  Curve2D curve;
  int n = 0;
  Eigen::VectorXd t;               // parameters
  std::vector<CurvePoint> points;  // curve data at the nodes
  Eigen::VectorXd w;               // quadrature weights (arclength measure)

  static BoundaryGrid make(const Curve2D& curve, int n);

  /// Node values of a function of the parameter.
  Eigen::VectorXd sample(const std::function<double(double)>& f) const;
  /// Node values of a function of the point.
  Eigen::VectorXd sample_xy(const std::function<double(const Eigen::Vector2d&)>& f) const;

  double mesh_spacing() const;  // max_i w_i (arclength step)
};

struct AssembleOptions {
  bool auto_rescale = false;   // shrink the curve to diameter 1/2 when needed
  double positivity_floor = 0.0;  // require lambda_min(S) > floor
};

/// Weight-symmetrized dense discretizations of the layer operators.
///
/// All matrices act on D^{1/2}-weighted node vectors: for an operator T with
/// nodal matrix T_nod (mapping node values to node values), the stored matrix
/// is T_hat = D^{1/2} T_nod D^{-1/2}, D = diag(w). S_hat is then symmetric
/// positive definite, Kstar_hat = K_hat^T exactly, and eigenvalues coincide
/// with those of the nodal operators.
struct DiscretizedOperators {
  BoundaryGrid grid;
  Eigen::MatrixXd S;      // single layer
  Eigen::MatrixXd K;      // double-layer boundary operator (kernel 2k), K 1 = 1
  Eigen::MatrixXd Kstar;  // = K^T
  Eigen::MatrixXd A;      // factor operator: solve S A = K, symmetrized
  double scale_factor = 1.0;      // rescale applied to the input curve
  double lambda_min_S = 0.0;      // smallest eigenvalue of S
  double plemelj_residual = 0.0;  // ||S K* - K S||_2
  double factorization_residual = 0.0;  // ||K - S A||_2

  Eigen::VectorXd to_weighted(const Eigen::VectorXd& nodal) const;    // D^{1/2} v
  Eigen::VectorXd from_weighted(const Eigen::VectorXd& hat) const;    // D^{-1/2} v

  /// Nodal application of an assembled operator: D^{-1/2} T_hat D^{1/2} f.
  Eigen::VectorXd apply_nodal(const Eigen::MatrixXd& T_hat, const Eigen::VectorXd& f) const;
};

/// Builds S (Kress log-splitting product quadrature), K, K* = K^T and the
/// factor A on the grid. Throws PositivityError when S fails to be positive
/// definite (remedy: rescale_for_positivity or auto_rescale).
DiscretizedOperators assemble(const Curve2D& curve, int n, const AssembleOptions& opts = {});

/// Dirichlet-to-Neumann matrix Lambda_hat = (I - K*_hat) S_hat^{-1} / 2 via
/// symmetric solves.
Eigen::MatrixXd dtn_matrix(const DiscretizedOperators& ops);

/// Residual of the factor identity 2 Lambda = S^{-1} - A.
double dtn_factor_residual(const DiscretizedOperators& ops, const Eigen::MatrixXd& dtn);

/// Largest singular value (spectral norm).
double spectral_norm(const Eigen::MatrixXd& m);

// Off-boundary potential evaluation by the plain trapezoid rule on the grid
// (accuracy degrades within ~one mesh spacing of the curve; use
// nearest_node_distance to detect).
double single_layer_potential(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                              const Eigen::Vector2d& x);
double double_layer_potential(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                              const Eigen::Vector2d& x);
Eigen::Vector2d single_layer_gradient(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                                      const Eigen::Vector2d& x);
double nearest_node_distance(const BoundaryGrid& grid, const Eigen::Vector2d& x);

/// Residuals of the one-sided limits of the layer potentials at x(t):
///   S continuity (two relations), d/dn S_f^{i,e} = ±f/2 - K*f/2,
///   D_f^{i,e} = ∓f/2 - Kf/2.
/// Potentials are evaluated at x ± eps n on internally refined grids (the
/// density is given analytically in the parameter) and Richardson-extrapolated
/// over eps -> 0.
struct JumpReport {
  double s_continuity = 0.0;       // |S_f^i - S_f^e|
  double s_boundary = 0.0;         // |S_f^i - (Sf)(x)|
  double dn_s_interior = 0.0;      // |d/dn S_f^i - (f/2 - K*f/2)|
  double dn_s_exterior = 0.0;      // |d/dn S_f^e - (-f/2 - K*f/2)|
  double d_interior = 0.0;         // |D_f^i - (-f/2 - Kf/2)|
  double d_exterior = 0.0;         // |D_f^e - (f/2 - Kf/2)|
  double extrapolation_error = 0.0;  // max Neville tail estimate
  bool converged = true;
  double max_residual() const;
};
JumpReport jump_check(const Curve2D& curve, const std::function<double(double)>& density,
                      double t, const std::vector<double>& eps_sequence = {1e-2, 3.162277660168379e-3, 1e-3, 3.162277660168379e-4, 1e-4});

}  // namespace nps

#endif  // NPS_NYSTROM_HPP
