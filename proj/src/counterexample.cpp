#include "nps/counterexample.hpp"

#include <cmath>

#include "nps/errors.hpp"
#include "nps/nystrom.hpp"  // spectral_norm

namespace nps {

KreinExample KreinExample::make(Eigen::VectorXd lambdas) {
  const int m = static_cast<int>(lambdas.size());
  if (m < 1) throw NumericError("KreinExample: need at least one weight");
  for (int j = 0; j < m; ++j) {
    if (!(lambdas(j) > 0.0)) throw NumericError("KreinExample: weights must be positive");
    if (j > 0 && lambdas(j) > lambdas(j - 1) + 1e-15)
      throw NumericError("KreinExample: weights must be nonincreasing");
  }

  KreinExample ex;
  const double ss = lambdas.squaredNorm();
  ex.rescaled = std::abs(ss - 1.0) > 1e-14;
  ex.lambda = ex.rescaled ? (lambdas / std::sqrt(ss)).eval() : std::move(lambdas);

  const int n = m + 1;
  ex.S = Eigen::MatrixXd::Zero(n, n);
  ex.S(0, 0) = 1.0;
  for (int j = 1; j < n; ++j) ex.S(j, j) = ex.lambda(j - 1);

  ex.A = Eigen::MatrixXd::Identity(n, n);
  for (int j = 1; j < n; ++j) {
    ex.A(0, j) = -ex.lambda(j - 1);
    ex.A(j, 0) = -ex.lambda(j - 1);
  }

  ex.Kstar = ex.A * ex.S;
  ex.K = ex.S * ex.A;
  const Eigen::VectorXd root = ex.lambda.array().sqrt();
  Eigen::MatrixXd sqrtS = Eigen::MatrixXd::Zero(n, n);
  sqrtS(0, 0) = 1.0;
  for (int j = 1; j < n; ++j) sqrtS(j, j) = root(j - 1);
  ex.C = sqrtS * ex.A * sqrtS;
  return ex;
}

KreinExample KreinExample::geometric(int count) {
  if (count < 1) throw NumericError("KreinExample: need at least one weight");
  Eigen::VectorXd l(count);
  for (int j = 0; j < count; ++j) l(j) = std::pow(2.0, -(j + 1));
  return make(std::move(l));
}

Eigen::VectorXd KreinExample::ker_A() const {
  Eigen::VectorXd v(dim());
  v(0) = 1.0;
  v.tail(dim() - 1) = lambda;
  return v;
}

Eigen::VectorXd KreinExample::ker_C() const {
  Eigen::VectorXd v(dim());
  v(0) = 1.0;
  v.tail(dim() - 1) = lambda.array().sqrt();
  return v;
}

Eigen::VectorXd KreinExample::ker_AS() const { return Eigen::VectorXd::Ones(dim()); }

Eigen::VectorXd KreinExample::ker_SA() const { return ker_A(); }

double KreinExample::kernel_residual() const {
  const double rA = (A * ker_A()).norm() / spectral_norm(A);
  const double rC = (C * ker_C()).norm() / spectral_norm(C);
  const double rAS = (Kstar * ker_AS()).norm() / spectral_norm(Kstar);
  const double rSA = (K * ker_SA()).norm() / spectral_norm(K);
  return std::max({rA, rC, rAS, rSA});
}

bool KreinExample::rank_nullity_holds(double rank_tol) const {
  const auto rank_deficiency = [&](const Eigen::MatrixXd& M) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
    const Eigen::VectorXd sv = svd.singularValues();
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) <= rank_tol * sv(0)) ++null_dim;
    return null_dim;
  };
  return rank_deficiency(A) == 1 && rank_deficiency(C) == 1 && rank_deficiency(Kstar) == 1 &&
         rank_deficiency(K) == 1;
}

std::vector<double> krein_growth_norms(const std::vector<int>& dims) {
  std::vector<double> norms;
  norms.reserve(dims.size());
  for (int d : dims) {
    if (d < 2) throw NumericError("krein_growth_norms: dimension must be >= 2");
    KreinExample ex = KreinExample::geometric(d - 1);
    norms.push_back(ex.ker_AS().norm());
  }
  return norms;
}

}  // namespace nps
