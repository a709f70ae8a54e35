#ifndef NPS_DIRICHLET_HPP
#define NPS_DIRICHLET_HPP

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "nps/nystrom.hpp"
#include "nps/symmetrizable.hpp"

namespace nps {

/// Harmonic extension of boundary data f by the layer-potential transform
///   interior: u = -S_{Af} - 2 D_f,   exterior: u = S_{Af} + 2 D_f,
/// where a = Af is obtained both as A_hat f and by the solve S_hat a = K_hat f
/// (the two densities must agree).
struct HarmonicSolution {
  BoundaryGrid grid;
  Eigen::VectorXd f;        // nodal boundary data
  Eigen::VectorXd density;  // nodal a = A f
  bool exterior = false;
  double path_agreement = 0.0;  // ||a_factor - a_solve|| / ||a||

  double eval(const Eigen::Vector2d& x) const;
  Eigen::Vector2d grad(const Eigen::Vector2d& x) const;
  /// True when x is within one mesh spacing of the boundary (degraded accuracy).
  bool near_boundary(const Eigen::Vector2d& x) const;
};

HarmonicSolution solve_dirichlet(const DiscretizedOperators& ops, const Eigen::VectorXd& f,
                                 bool exterior = false);

/// Modal form of the same solution through the spectral data:
/// f = h + sum_j c_j g_j with K h = 0, c_j = <sqrt(S)^{-1} f_hat, phi_j>, and
///   u = -2 D_h - sum_{j<N} c_j (lambda_j S_{f_j} + 2 D_{g_j}).
struct ModalSolution {
  BoundaryGrid grid;
  Eigen::VectorXd h;               // nodal kernel component
  Eigen::VectorXd c;               // modal coefficients (retained modes)
  Eigen::MatrixXd F_nodal, G_nodal;  // nodal eigenvector densities
  Eigen::VectorXd lambda;
  int N = 0;

  double eval(const Eigen::Vector2d& x) const;
};
ModalSolution modal_solution(const DiscretizedOperators& ops, const SpectralData& sd,
                             const Eigen::VectorXd& f, int N = -1);

/// Identity A g_j = lambda_j f_j, needed for the modal representation;
/// returns the max relative residual over the first N retained modes.
double modal_identity_residual(const DiscretizedOperators& ops, const SpectralData& sd, int N);

/// Disk cross-check: compares solve_dirichlet against the Poisson-kernel
/// integral u(x) = int P_r(x, y) f(y) dsigma(y) at interior points.
struct GreenReport {
  double max_residual;
  std::vector<double> u_numeric, u_exact;
};
GreenReport green_identity_check(double radius, const std::function<double(double)>& f_of_t,
                                 const std::vector<Eigen::Vector2d>& points, int n = 128);

/// Boundary trace of the dipole field q_z(x) = a . grad_z E(z - x)
///   = -(1/2pi) <a, z - x>/|z - x|^2  (2D),
/// the standard cyclic-vector candidate for an exterior pole z.
Eigen::VectorXd point_source_density(const BoundaryGrid& grid, const Eigen::Vector2d& z,
                                     const Eigen::Vector2d& a);

}  // namespace nps

#endif  // NPS_DIRICHLET_HPP
