#ifndef NPS_COUNTEREXAMPLE_HPP
#define NPS_COUNTEREXAMPLE_HPP

#include <Eigen/Dense>

#include <vector>

namespace nps {

/// Bordered-matrix family showing that the root vectors of a symmetrizable
/// operator need not be complete: with weights 1 = lambda_0, lambda_1 >= ... >=
/// lambda_N > 0, sum_{n>=1} lambda_n^2 = 1,
///   S = diag(1, lambda_1, ..., lambda_N),
///   A = I except A_{0j} = A_{j0} = -lambda_j (j >= 1),
/// the products AS, SA and the core C = sqrt(S) A sqrt(S) all have
/// one-dimensional kernels spanned by different vectors, and the ker(AS)
/// vector (all ones) has norm sqrt(dim) while the ker(SA) vector stays bounded.
struct KreinExample {
  Eigen::VectorXd lambda;  // after renormalization
  Eigen::MatrixXd S, A, K, Kstar, C;
  bool rescaled = false;   // input weights were renormalized to sum of squares 1

  /// Builds the example; weights must be positive and nonincreasing.
  static KreinExample make(Eigen::VectorXd lambdas);
  /// Convenience: lambda_j proportional to 2^{-j}, j = 1..count, renormalized.
  static KreinExample geometric(int count);

  int dim() const { return static_cast<int>(lambda.size()) + 1; }

  // Exact kernel vectors, normalized to first component 1.
  Eigen::VectorXd ker_A() const;      // (1, lambda_1, ..., lambda_N)
  Eigen::VectorXd ker_C() const;      // (1, sqrt(lambda_1), ..., sqrt(lambda_N))
  Eigen::VectorXd ker_AS() const;     // (1, 1, ..., 1)
  Eigen::VectorXd ker_SA() const;     // (1, lambda_1, ..., lambda_N)

  /// max over the four pairs (M, v) of ||M v|| / ||M||, plus rank-nullity
  /// verification (each matrix has numerical rank dim-1).
  double kernel_residual() const;
  bool rank_nullity_holds(double rank_tol = 1e-10) const;
};

/// ||ker_AS|| for a sequence of matrix dimensions; the norm grows like
/// sqrt(dim), so quadrupling the dimension should double it.
std::vector<double> krein_growth_norms(const std::vector<int>& dims);

}  // namespace nps

#endif  // NPS_COUNTEREXAMPLE_HPP
