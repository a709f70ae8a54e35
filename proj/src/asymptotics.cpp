#include "nps/asymptotics.hpp"

#include <cmath>

#include "nps/errors.hpp"

namespace nps {

namespace {

// splitmix64: tiny, seedable, platform-independent
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0, 1)
    return (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }
};

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues();
}

// smallest m with (m+1)^2 >= n: the 1-based n-th singular value of the sphere
// table is 1/(2m+1)
int sphere_block_index(int n) {
  const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) - 1;
  return (m + 1) * (m + 1) >= n ? m : m + 1;
}

}  // namespace

std::vector<RatioRow> singular_ratio_table(const Eigen::MatrixXd& K, const Eigen::MatrixXd& S,
                                           int count) {
  const int dim = static_cast<int>(std::min(K.rows(), S.rows()));
  if (count < 1 || count > dim) throw NumericError("singular_ratio_table: count out of range");
  const Eigen::VectorXd sk = singular_values(K);
  const Eigen::VectorXd ss = singular_values(S);
  std::vector<RatioRow> rows;
  rows.reserve(count);
  for (int n = 1; n <= count; ++n)
    rows.push_back({n, sk(n - 1), ss(n - 1), sk(n - 1) / ss(n - 1)});
  return rows;
}

std::vector<RatioRow> sphere_ratio_table(int count) {
  if (count < 1) throw NumericError("sphere_ratio_table: count must be >= 1");
  std::vector<RatioRow> rows;
  rows.reserve(count);
  for (int n = 1; n <= count; ++n) {
    const double s = 1.0 / (2 * sphere_block_index(n) + 1);
    rows.push_back({n, s, s, 1.0});
  }
  return rows;
}

double sphere_sigma_sqrt_n(int n) {
  if (n < 1) throw NumericError("sphere_sigma_sqrt_n: n must be >= 1");
  return std::sqrt(static_cast<double>(n)) / (2 * sphere_block_index(n) + 1);
}

Eigen::MatrixXd seeded_gaussian(int rows, int cols, std::uint64_t seed) {
  SplitMix64 rng{seed};
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      m(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
  return m;
}

Eigen::MatrixXd seeded_orthogonal(int n, std::uint64_t seed) {
  const Eigen::MatrixXd g = seeded_gaussian(n, n, seed);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R = Q.transpose() * g;
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

PerturbReport perturbed_identity_ratio_check(int N, BSpec spec, std::uint64_t seed) {
  if (N < 8) throw NumericError("perturbed_identity_ratio_check: N too small");
  Eigen::VectorXd s(N);
  for (int k = 1; k <= N; ++k) s(k - 1) = 1.0 / k;
  const Eigen::MatrixXd S = s.asDiagonal();

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
  if (spec == BSpec::RankOne) {
    const Eigen::MatrixXd g = seeded_gaussian(N, 2, seed);
    const Eigen::VectorXd u = g.col(0).normalized();
    const Eigen::VectorXd v = g.col(1).normalized();
    B = 0.5 * u * v.transpose();
  } else if (spec == BSpec::GeometricTail) {
    // eigenvalues 2^{-k} from k = 6 on, in a seeded orthogonal basis
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(N);
    for (int k = 6; k <= N; ++k) mu(k - 1) = std::pow(2.0, -k);
    const Eigen::MatrixXd Q = seeded_orthogonal(N, seed);
    B = Q * mu.asDiagonal() * Q.transpose();
  }

  const Eigen::MatrixXd K = (Eigen::MatrixXd::Identity(N, N) + B) * S;
  const Eigen::VectorXd sk = singular_values(K);
  const Eigen::VectorXd ss = singular_values(S);

  PerturbReport rep{};
  for (int n = N / 2; n <= N; ++n)
    rep.max_tail_deviation =
        std::max(rep.max_tail_deviation, std::abs(sk(n - 1) / ss(n - 1) - 1.0));

  const double r = ss(3 * N / 4 - 1);
  int ck = 0, cs = 0;
  for (int i = 0; i < N; ++i) {
    if (sk(i) >= r) ++ck;
    if (ss(i) >= r) ++cs;
  }
  rep.counting_ratio = static_cast<double>(ck) / static_cast<double>(cs);
  return rep;
}

}  // namespace nps
