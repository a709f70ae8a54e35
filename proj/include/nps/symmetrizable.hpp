#ifndef NPS_SYMMETRIZABLE_HPP
#define NPS_SYMMETRIZABLE_HPP

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

#include "nps/nystrom.hpp"

namespace nps {

/// A pair (S, K) with S symmetric positive definite and S K* = K S
/// (K* = K^T), together with the factor A solving K = S A, A = A^T.
struct SymmetrizablePair {
  Eigen::MatrixXd S;
  Eigen::MatrixXd K;
  Eigen::MatrixXd A;
  double plemelj_residual = 0.0;   // ||S K^T - K S||_2, recorded at construction
  double s_norm = 0.0;             // ||S||_2 (normalization factor for tolerances)

  /// Builds the pair from (S, K); A = sym(S^{-1} K). Throws NumericError when
  /// S is not symmetric PD or the symmetrizability residual exceeds
  /// tol * ||S|| * ||K||.
  static SymmetrizablePair make(Eigen::MatrixXd S, Eigen::MatrixXd K, double tol = 1e-8);
  static SymmetrizablePair make_with_factor(Eigen::MatrixXd S, Eigen::MatrixXd K,
                                            Eigen::MatrixXd A, double tol = 1e-8);
  /// Adapter from the weight-symmetrized boundary discretization.
  static SymmetrizablePair from_ops(const DiscretizedOperators& ops, double tol = 1e-8);
};

struct FactorizeOptions {
  double kernel_tol_rel = 1e-10;  // |lambda| <= kernel_tol_rel * ||C|| counts as kernel
  double group_tol = 1e-8;        // eigenvalues closer than this form one group
};

/// Spectral data of the symmetric core C = sqrt(S) A sqrt(S):
/// real eigenvalues lambda_j (all n, sorted by decreasing |lambda|, ties with
/// the positive one first) and the biorthogonal root systems
///   f_j = sqrt(S)^{-1} phi_j (eigenvectors of K*),
///   g_j = sqrt(S) phi_j = S f_j (eigenvectors of K), <f_j, g_k> = delta_jk.
struct SpectralData {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd F;        // columns f_j
  Eigen::MatrixXd G;        // columns g_j
  Eigen::MatrixXd Phi;      // orthonormal eigenvectors of C
  Eigen::MatrixXd S, K;     // copies of the pair
  Eigen::MatrixXd sqrtS, sqrtSinv;
  Eigen::VectorXd s_eigs;   // eigenvalues of S, decreasing
  Eigen::MatrixXd s_vecs;   // corresponding eigenvectors
  double s_norm = 0.0;      // ||S||_2
  double a_norm = 0.0;      // ||A||_2
  double c_norm = 0.0;      // ||C||_2
  double kernel_tol = 0.0;  // absolute kernel threshold
  double group_tol = 0.0;
  int n_retained = 0;       // modes with |lambda| > kernel_tol (a prefix after sorting)

  int size() const { return static_cast<int>(lambda.size()); }
  /// Orthonormal basis of the numerical kernel of C (may have 0 columns).
  Eigen::MatrixXd kernel_basis() const;
  /// max_jk |<f_j, g_k> - delta_jk|.
  double biorthogonality_residual() const;
  /// ||K* F - F diag(lambda)||_2 / (||K|| ||F||) and the K G analogue.
  double eigen_residual_kstar() const;
  double eigen_residual_k() const;
  /// Weighted norms after ||S|| = 1 normalization: ||x||_- = ||sqrt(S/s) x||,
  /// ||x||_+ = ||sqrt(s) sqrt(S)^{-1} x|| (so ||x||_- <= ||x|| <= ||x||_+).
  double norm_minus(const Eigen::VectorXd& x) const;
  double norm_plus(const Eigen::VectorXd& x) const;
};

SpectralData factorize(const SymmetrizablePair& pair, const FactorizeOptions& opts = {});

/// Slanted spectral projection Q_mu = sum_{|lambda_j - mu| <= group_tol} f_j g_j^T.
Eigen::MatrixXd slanted_projection(const SpectralData& sd, double mu);

/// Partial sum K*_N = sum_{j<N} lambda_j f_j g_j^T and its error vs K*.
struct PartialSumReport {
  Eigen::MatrixXd op;
  double error;  // ||K* - K*_N||_2
};
PartialSumReport resolution_partial_sum(const SpectralData& sd, int N);

/// Finite-rank truncation through the S-eigenbasis: L_N = (pi_N S pi_N) A with
/// pi_N the projection onto the top-N eigenvectors of S.
/// Theorem bound: ||K - L_N|| <= ||A|| sigma_N (sigma_N = (N+1)-th eigenvalue of S).
struct FiniteRankReport {
  Eigen::MatrixXd op;
  double error;      // ||K - L_N||_2
  double bound;      // ||A||_2 sigma_N
  bool bound_holds;  // error <= bound + slack
};
FiniteRankReport finite_rank_truncate(const SpectralData& sd, int N, double slack = 1e-12);

/// A scalar function with derivative (for C^1 functional calculus bounds).
struct C1Function {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

/// Functional calculus Phi(phi) = phi(0) I + sum_j (phi(lambda_j) - phi(0)) f_j g_j^T
/// with the two-sided norm report:
///   upper  ||Phi(phi)||_2 <= 2 ||A|| ||S|| ||phi||_C1  (recorded)
///   lower  ||Phi(phi)||_2 >= max_j |phi(lambda_j)|      (asserted by caller)
struct CalculusReport {
  Eigen::MatrixXd op;
  double op_norm;
  double upper_bound;
  double lower_bound;
  double phi_c1_norm;
};
CalculusReport functional_calculus(const SpectralData& sd, const C1Function& phi);

/// Evaluates p(K*) for a polynomial (coefficients in increasing degree) by
/// Horner's rule; reference for the polynomial-exactness of the calculus.
Eigen::MatrixXd polynomial_of_kstar(const SpectralData& sd, const Eigen::VectorXd& coeffs);
C1Function polynomial_c1(const Eigen::VectorXd& coeffs);

/// Resolvent application u = (lambda - K*)^{-1} f through the spectral series
///   u = f/lambda + sum_j lambda_j / (lambda (lambda - lambda_j)) <f, g_j> f_j,
/// compared against a direct dense solve.
struct ResolventReport {
  Eigen::VectorXd u_series;
  Eigen::VectorXd u_direct;
  double agreement;      // ||u_series - u_direct|| / ||u_direct||
  double borel_lhs;      // sum_j |lambda_j <f,g_j><f_j,g>| for the Borel bound
  double borel_rhs;      // ||sqrt(S) f|| ||sqrt(S) A g||
};
ResolventReport resolvent_apply(const SpectralData& sd, double lambda, const Eigen::VectorXd& f,
                                const Eigen::VectorXd& g_probe);

/// Numeric residue of z -> (I - z K*)^{-1} f at z = 1/lambda_j, which equals
/// -Q_{lambda_j} f / lambda_j for simple eigenvalues.
Eigen::VectorXd resolvent_residue_numeric(const SpectralData& sd, int j, const Eigen::VectorXd& f);

/// Two-sided resolvent growth near an isolated eigenvalue alpha = lambda[j]:
///   1/|z - alpha| <= ||(K* - z)^{-1}||_2 <= (1 + ||A|| ||S||)/|z - alpha|
/// for 0 < |z - alpha| < delta = min_{mu != alpha} |mu - alpha| / 2 and
/// |z - alpha| < |alpha|/2 (after the ||S|| = 1 normalization).
struct GrowthRow {
  double radius;
  double norm;        // ||(K* - z)^{-1}||_2
  double lower, upper;
  bool holds;
};
std::vector<GrowthRow> resolvent_growth_check(const SpectralData& sd, int j,
                                              const std::vector<double>& radii);
/// Admissible maximal radius for the sandwich at eigenvalue index j.
double growth_radius_limit(const SpectralData& sd, int j);

/// Regularized Fredholm determinant from an eigenvalue list:
///   det_p(z) = prod_j (1 - z lambda_j) exp(sum_{k=1}^{p-1} z^k tr_k / k),
/// tr_k = sum_j lambda_j^k. Also checks the order-raising recursion
///   det_{p+1} = det_p exp(z^p tr_p / p).
double fredholm_det(const Eigen::VectorXd& lambdas, int p, double z);
double fredholm_recursion_residual(const Eigen::VectorXd& lambdas, int p, double z);

/// Complex power (K*)^z v = sum_j lambda_j^z <v, g_j> f_j over the retained
/// spectrum; requires all retained eigenvalues positive (branch condition).
Eigen::VectorXcd complex_power_apply(const SpectralData& sd, std::complex<double> z,
                                     const Eigen::VectorXd& v);

/// Coefficients <xi, g_j> over the retained modes; xi is cyclic iff none vanish.
struct CyclicReport {
  Eigen::VectorXd coefficients;
  double min_abs;
  bool cyclic;  // min_abs > threshold
};
CyclicReport cyclic_coefficients(const SpectralData& sd, const Eigen::VectorXd& xi,
                                 double threshold = 1e-12);

/// Compression of the pair to span{f_j : j in J}: the compressed pair stays
/// symmetrizable (P S P . P K* P = P K P . P S P on the subspace) with positive
/// compressed S.
struct ProjectionReport {
  double invariance_residual;      // ||(I-P) K* P||_2 relative
  double symmetrizability_residual;  // compressed Plemelj residual, relative
  double compressed_s_min;         // smallest eigenvalue of the compressed S
  bool diagonalizable;             // compressed core has a full eigenbasis
};
ProjectionReport invariant_projection_check(const SpectralData& sd, const std::vector<int>& J);

/// Reconstruction from a Bari-type root system: given a full-rank F (columns
/// f_n) and eigenvalues, build the unique SPD S with S f_n = g_n = F^{-T} e_n:
/// S = (F F^T)^{-1}, A = F diag(lambda) F^T, K = S A, K* = A S.
struct BariSystem {
  Eigen::MatrixXd F, G, S, A, K;
  double recovery_residual;  // max_n ||S f_n - g_n|| / ||g_n||
};
BariSystem bari_construct(const Eigen::MatrixXd& F, const Eigen::VectorXd& lambda);

}  // namespace nps

#endif  // NPS_SYMMETRIZABLE_HPP
