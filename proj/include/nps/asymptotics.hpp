#ifndef NPS_ASYMPTOTICS_HPP
#define NPS_ASYMPTOTICS_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace nps {

/// One row of a singular-number comparison table.
struct RatioRow {
  int n;             // 1-based index
  double sigma_k;    // n-th singular value of K
  double sigma_s;    // n-th singular value of S
  double ratio;      // sigma_k / sigma_s
};

/// Table of sigma_n(K)/sigma_n(S) from two dense matrices.
std::vector<RatioRow> singular_ratio_table(const Eigen::MatrixXd& K, const Eigen::MatrixXd& S,
                                           int count);

/// Analytic unit-sphere table: both operators have eigenvalues 1/(2n+1) with
/// multiplicity 2n+1, so every ratio is exactly 1.
std::vector<RatioRow> sphere_ratio_table(int count);

/// sigma_n sqrt(n) for the analytic sphere table at index n (1-based), which
/// approaches 1/2 = c_S = c_K.
double sphere_sigma_sqrt_n(int n);

/// Multiplicative-perturbation experiment K = (I + B) S with S = diag(1/k):
/// the tail singular-value ratios approach 1 as B's spectral tail shrinks.
struct PerturbReport {
  double max_tail_deviation;  // max_{n in [N/2, N]} |sigma_n(K)/sigma_n(S) - 1|
  double counting_ratio;      // #{sigma_n(K) >= r} / #{sigma_n(S) >= r} at r = sigma_{3N/4}(S)
};
enum class BSpec { Zero, RankOne, GeometricTail };
PerturbReport perturbed_identity_ratio_check(int N, BSpec spec, std::uint64_t seed);

/// Deterministic Gaussian matrix / orthogonal factor (splitmix64-based, used
/// by the seeded experiments so outputs are platform-independent).
Eigen::MatrixXd seeded_gaussian(int rows, int cols, std::uint64_t seed);
Eigen::MatrixXd seeded_orthogonal(int n, std::uint64_t seed);

}  // namespace nps

#endif  // NPS_ASYMPTOTICS_HPP
