#include "nps/symmetrizable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nps/errors.hpp"

namespace nps {

namespace {

void check_pair(const Eigen::MatrixXd& S, const Eigen::MatrixXd& K, double tol,
                double s_norm, double plemelj) {
  if (S.rows() != S.cols() || K.rows() != K.cols() || S.rows() != K.rows())
    throw NumericError("symmetrizable pair: S and K must be square of equal size");
  if (spectral_norm(S - S.transpose()) > tol * s_norm)
    throw NumericError("symmetrizable pair: S is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw NumericError("symmetrizable pair: S is not positive definite");
  const double k_norm = spectral_norm(K);
  if (plemelj > tol * s_norm * k_norm)
    throw NumericError("symmetrizable pair: symmetrizability residual ||S K^T - K S|| = " +
                       std::to_string(plemelj) + " exceeds tolerance");
}

}  // namespace

SymmetrizablePair SymmetrizablePair::make(Eigen::MatrixXd S, Eigen::MatrixXd K, double tol) {
  SymmetrizablePair p;
  p.s_norm = spectral_norm(S);
  p.plemelj_residual = spectral_norm(S * K.transpose() - K * S);
  check_pair(S, K, tol, p.s_norm, p.plemelj_residual);
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  Eigen::MatrixXd X = llt.solve(K);
  p.A = 0.5 * (X + X.transpose());
  p.S = std::move(S);
  p.K = std::move(K);
  return p;
}

SymmetrizablePair SymmetrizablePair::make_with_factor(Eigen::MatrixXd S, Eigen::MatrixXd K,
                                                      Eigen::MatrixXd A, double tol) {
  SymmetrizablePair p;
  p.s_norm = spectral_norm(S);
  p.plemelj_residual = spectral_norm(S * K.transpose() - K * S);
  check_pair(S, K, tol, p.s_norm, p.plemelj_residual);
  if (spectral_norm(K - S * A) > tol * p.s_norm * (1.0 + spectral_norm(A)))
    throw NumericError("symmetrizable pair: provided factor does not satisfy K = S A");
  p.S = std::move(S);
  p.K = std::move(K);
  p.A = std::move(A);
  return p;
}

SymmetrizablePair SymmetrizablePair::from_ops(const DiscretizedOperators& ops, double tol) {
  return make_with_factor(ops.S, ops.K, ops.A, tol);
}

SpectralData factorize(const SymmetrizablePair& pair, const FactorizeOptions& opts) {
  SpectralData sd;
  const int n = static_cast<int>(pair.S.rows());
  sd.S = pair.S;
  sd.K = pair.K;
  sd.group_tol = opts.group_tol;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pair.S);
  if (es.info() != Eigen::Success) throw NumericError("factorize: eigensolve of S failed");
  // decreasing order
  sd.s_eigs = es.eigenvalues().reverse();
  sd.s_vecs = es.eigenvectors().rowwise().reverse();
  if (sd.s_eigs(n - 1) <= 0.0)
    throw NumericError("factorize: S is not positive definite");
  sd.s_norm = sd.s_eigs(0);

  const Eigen::ArrayXd root = sd.s_eigs.array().sqrt();
  sd.sqrtS = sd.s_vecs * root.matrix().asDiagonal() * sd.s_vecs.transpose();
  sd.sqrtSinv = sd.s_vecs * root.inverse().matrix().asDiagonal() * sd.s_vecs.transpose();

  sd.a_norm = spectral_norm(pair.A);
  Eigen::MatrixXd C = sd.sqrtS * pair.A * sd.sqrtS;
  C = 0.5 * (C + C.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(C);
  if (ec.info() != Eigen::Success) throw NumericError("factorize: eigensolve of the core failed");
  const Eigen::VectorXd mu = ec.eigenvalues();
  sd.c_norm = std::max(std::abs(mu(0)), std::abs(mu(n - 1)));
  sd.kernel_tol = opts.kernel_tol_rel * sd.c_norm;

  // sort by decreasing |lambda|, positive member of a +/- pair first
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(mu(a)), mb = std::abs(mu(b));
    if (ma != mb) return ma > mb;
    return mu(a) > mu(b);
  });

  sd.lambda.resize(n);
  sd.Phi.resize(n, n);
  for (int j = 0; j < n; ++j) {
    sd.lambda(j) = mu(idx[j]);
    Eigen::VectorXd phi = ec.eigenvectors().col(idx[j]);
    // deterministic sign: largest-magnitude entry positive
    int imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    if (phi(imax) < 0.0) phi = -phi;
    sd.Phi.col(j) = phi;
  }

  // canonical +/- pair order: the positive member first. Pair magnitudes agree
  // to roundoff, far below the gap between distinct pairs, so a tight window
  // cannot reorder anything else.
  const double pair_tol = 1e-12 * sd.c_norm;
  for (int j = 0; j + 1 < n;) {
    if (sd.lambda(j) < 0.0 && sd.lambda(j + 1) > 0.0 &&
        std::abs(-sd.lambda(j) - sd.lambda(j + 1)) <= pair_tol) {
      std::swap(sd.lambda(j), sd.lambda(j + 1));
      sd.Phi.col(j).swap(sd.Phi.col(j + 1));
      j += 2;
    } else {
      ++j;
    }
  }

  sd.n_retained = 0;
  while (sd.n_retained < n && std::abs(sd.lambda(sd.n_retained)) > sd.kernel_tol) ++sd.n_retained;

  sd.F = sd.sqrtSinv * sd.Phi;
  sd.G = sd.sqrtS * sd.Phi;
  return sd;
}

Eigen::MatrixXd SpectralData::kernel_basis() const {
  return Phi.rightCols(size() - n_retained);
}

double SpectralData::biorthogonality_residual() const {
  Eigen::MatrixXd M = F.transpose() * G;
  M.diagonal().array() -= 1.0;
  return M.cwiseAbs().maxCoeff();
}

double SpectralData::eigen_residual_kstar() const {
  return spectral_norm(K.transpose() * F - F * lambda.asDiagonal()) /
         (spectral_norm(K) * spectral_norm(F));
}

double SpectralData::eigen_residual_k() const {
  return spectral_norm(K * G - G * lambda.asDiagonal()) / (spectral_norm(K) * spectral_norm(G));
}

double SpectralData::norm_minus(const Eigen::VectorXd& x) const {
  return (sqrtS * x).norm() / std::sqrt(s_norm);
}

double SpectralData::norm_plus(const Eigen::VectorXd& x) const {
  return std::sqrt(s_norm) * (sqrtSinv * x).norm();
}

Eigen::MatrixXd slanted_projection(const SpectralData& sd, double mu) {
  const int n = sd.size();
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    if (std::abs(sd.lambda(j) - mu) <= sd.group_tol)
      Q.noalias() += sd.F.col(j) * sd.G.col(j).transpose();
  return Q;
}

PartialSumReport resolution_partial_sum(const SpectralData& sd, int N) {
  if (N < 0 || N > sd.size()) throw NumericError("resolution_partial_sum: N out of range");
  PartialSumReport r;
  r.op = sd.F.leftCols(N) * sd.lambda.head(N).asDiagonal() * sd.G.leftCols(N).transpose();
  r.error = spectral_norm(sd.K.transpose() - r.op);
  return r;
}

FiniteRankReport finite_rank_truncate(const SpectralData& sd, int N, double slack) {
  const int n = sd.size();
  if (N < 0 || N > n) throw NumericError("finite_rank_truncate: N out of range");
  // A reconstructed spectrally: A = F diag(lambda) F^T.
  Eigen::MatrixXd A = sd.F * sd.lambda.asDiagonal() * sd.F.transpose();
  Eigen::MatrixXd SN = sd.s_vecs.leftCols(N) * sd.s_eigs.head(N).asDiagonal() *
                       sd.s_vecs.leftCols(N).transpose();
  FiniteRankReport r;
  r.op = SN * A;
  r.error = spectral_norm(sd.K - r.op);
  r.bound = sd.a_norm * (N < n ? sd.s_eigs(N) : 0.0);
  r.bound_holds = r.error <= r.bound + slack;
  return r;
}

CalculusReport functional_calculus(const SpectralData& sd, const C1Function& phi) {
  const int n = sd.size();
  const double phi0 = phi.f(0.0);
  Eigen::MatrixXd op = phi0 * Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j < sd.n_retained; ++j)
    op.noalias() += (phi.f(sd.lambda(j)) - phi0) * sd.F.col(j) * sd.G.col(j).transpose();

  CalculusReport r;
  r.op = std::move(op);
  r.op_norm = spectral_norm(r.op);

  // sup norms of phi, phi' over the spectral interval [-||C||, ||C||]
  double sup_f = 0.0, sup_df = 0.0;
  const int grid = 2001;
  for (int i = 0; i < grid; ++i) {
    const double x = sd.c_norm * (2.0 * i / (grid - 1) - 1.0);
    sup_f = std::max(sup_f, std::abs(phi.f(x)));
    sup_df = std::max(sup_df, std::abs(phi.df(x)));
  }
  r.phi_c1_norm = sup_f + sup_df;
  r.upper_bound = 2.0 * sd.a_norm * sd.s_norm * r.phi_c1_norm;

  double lower = sd.n_retained < n ? std::abs(phi0) : 0.0;
  for (int j = 0; j < sd.n_retained; ++j) lower = std::max(lower, std::abs(phi.f(sd.lambda(j))));
  r.lower_bound = lower;
  return r;
}

Eigen::MatrixXd polynomial_of_kstar(const SpectralData& sd, const Eigen::VectorXd& coeffs) {
  const int n = sd.size();
  const Eigen::MatrixXd Kstar = sd.K.transpose();
  Eigen::MatrixXd P =
      coeffs(coeffs.size() - 1) * Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = coeffs.size() - 2; k >= 0; --k) {
    P = (Kstar * P).eval();
    P.diagonal().array() += coeffs(k);
  }
  return P;
}

C1Function polynomial_c1(const Eigen::VectorXd& coeffs) {
  const std::vector<double> c(coeffs.begin(), coeffs.end());
  C1Function out;
  out.f = [c](double x) {
    double acc = 0.0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  out.df = [c](double x) {
    double acc = 0.0;
    for (size_t k = c.size(); k-- > 1;) acc = acc * x + c[k] * static_cast<double>(k);
    return acc;
  };
  return out;
}

ResolventReport resolvent_apply(const SpectralData& sd, double lambda, const Eigen::VectorXd& f,
                                const Eigen::VectorXd& g_probe) {
  const int n = sd.size();
  if (lambda == 0.0) throw NumericError("resolvent_apply: lambda = 0 is in the spectrum");
  for (int j = 0; j < n; ++j)
    if (std::abs(lambda - sd.lambda(j)) < 1e-12 * std::max(1.0, sd.c_norm))
      throw NumericError("resolvent_apply: lambda collides with eigenvalue " + std::to_string(j));

  ResolventReport r;
  r.u_series = f / lambda;
  const Eigen::VectorXd fg = sd.G.transpose() * f;  // <f, g_j>
  for (int j = 0; j < n; ++j)
    r.u_series.noalias() +=
        (sd.lambda(j) / (lambda * (lambda - sd.lambda(j))) * fg(j)) * sd.F.col(j);

  const Eigen::MatrixXd M =
      lambda * Eigen::MatrixXd::Identity(n, n) - sd.K.transpose();
  r.u_direct = M.partialPivLu().solve(f);
  r.agreement = (r.u_series - r.u_direct).norm() / r.u_direct.norm();

  const Eigen::VectorXd fjg = sd.F.transpose() * g_probe;  // <f_j, g>
  r.borel_lhs = 0.0;
  for (int j = 0; j < n; ++j) r.borel_lhs += std::abs(sd.lambda(j) * fg(j) * fjg(j));
  const Eigen::VectorXd Ag =
      sd.F * (sd.lambda.asDiagonal() * (sd.F.transpose() * g_probe));
  r.borel_rhs = (sd.sqrtS * f).norm() * (sd.sqrtS * Ag).norm();
  return r;
}

Eigen::VectorXd resolvent_residue_numeric(const SpectralData& sd, int j,
                                          const Eigen::VectorXd& f) {
  const int n = sd.size();
  if (j < 0 || j >= sd.n_retained) throw NumericError("resolvent_residue_numeric: bad index");
  const double z0 = 1.0 / sd.lambda(j);
  // pole spacing in the z-plane
  double gap = std::numeric_limits<double>::max();
  for (int i = 0; i < sd.n_retained; ++i)
    if (i != j) gap = std::min(gap, std::abs(1.0 / sd.lambda(i) - z0));
  double h = std::min(0.05 * std::abs(z0), 0.125 * gap);

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd Kstar = sd.K.transpose();
  auto sample = [&](double z) -> Eigen::VectorXd {
    return (I - z * Kstar).partialPivLu().solve(f) * (z - z0);
  };
  // symmetric average kills the even terms; Richardson in h^2 afterwards
  const int levels = 4;
  std::vector<Eigen::VectorXd> T(levels);
  for (int k = 0; k < levels; ++k) {
    const double hk = h / (1 << k);
    T[k] = 0.5 * (sample(z0 + hk) + sample(z0 - hk));
  }
  for (int m = 1; m < levels; ++m)
    for (int k = levels - 1; k >= m; --k)
      T[k] = (std::pow(4.0, m) * T[k] - T[k - 1]) / (std::pow(4.0, m) - 1.0);
  return T[levels - 1];
}

double growth_radius_limit(const SpectralData& sd, int j) {
  const double alpha = sd.lambda(j);
  double delta = std::numeric_limits<double>::max();
  for (int i = 0; i < sd.size(); ++i)
    if (i != j) delta = std::min(delta, std::abs(sd.lambda(i) - alpha));
  return std::min(0.5 * delta, 0.5 * std::abs(alpha));
}

std::vector<GrowthRow> resolvent_growth_check(const SpectralData& sd, int j,
                                              const std::vector<double>& radii) {
  const int n = sd.size();
  const double alpha = sd.lambda(j);
  const double limit = growth_radius_limit(sd, j);
  const double cst = 1.0 + sd.a_norm * sd.s_norm;
  const Eigen::MatrixXd Kstar = sd.K.transpose();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

  std::vector<GrowthRow> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0) || r >= limit)
      throw NumericError("resolvent_growth_check: radius outside the admissible window");
    GrowthRow row{};
    row.radius = r;
    // resolvent norm = 1 / smallest singular value of (K* - z I)
    Eigen::BDCSVD<Eigen::MatrixXd> svd_p(Kstar - (alpha + r) * I);
    Eigen::BDCSVD<Eigen::MatrixXd> svd_m(Kstar - (alpha - r) * I);
    const double norm_p = 1.0 / svd_p.singularValues().tail(1)(0);
    const double norm_m = 1.0 / svd_m.singularValues().tail(1)(0);
    row.norm = std::max(norm_p, norm_m);
    row.lower = 1.0 / r;
    row.upper = cst / r;
    row.holds = std::min(norm_p, norm_m) >= row.lower * (1.0 - 1e-10) &&
                row.norm <= row.upper * (1.0 + 1e-10);
    rows.push_back(row);
  }
  return rows;
}

double fredholm_det(const Eigen::VectorXd& lambdas, int p, double z) {
  if (p < 1) throw NumericError("fredholm_det: order p must be >= 1");
  double prod = 1.0;
  for (Eigen::Index j = 0; j < lambdas.size(); ++j) prod *= 1.0 - z * lambdas(j);
  double expo = 0.0;
  for (int k = 1; k < p; ++k) {
    const double tr_k = lambdas.array().pow(k).sum();
    expo += std::pow(z, k) * tr_k / k;
  }
  return prod * std::exp(expo);
}

double fredholm_recursion_residual(const Eigen::VectorXd& lambdas, int p, double z) {
  const double lhs = fredholm_det(lambdas, p + 1, z);
  const double tr_p = lambdas.array().pow(p).sum();
  const double rhs = fredholm_det(lambdas, p, z) * std::exp(std::pow(z, p) * tr_p / p);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

Eigen::VectorXcd complex_power_apply(const SpectralData& sd, std::complex<double> z,
                                     const Eigen::VectorXd& v) {
  for (int j = 0; j < sd.n_retained; ++j)
    if (sd.lambda(j) <= 0.0)
      throw NumericError("complex_power_apply: retained spectrum must be positive");
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(sd.size());
  const Eigen::VectorXd vg = sd.G.transpose() * v;
  for (int j = 0; j < sd.n_retained; ++j) {
    const std::complex<double> w = std::exp(z * std::log(sd.lambda(j))) * vg(j);
    u += w * sd.F.col(j).cast<std::complex<double>>();
  }
  return u;
}

CyclicReport cyclic_coefficients(const SpectralData& sd, const Eigen::VectorXd& xi,
                                 double threshold) {
  CyclicReport r;
  r.coefficients = (sd.G.leftCols(sd.n_retained).transpose() * xi).cwiseAbs();
  r.min_abs = r.coefficients.size() > 0 ? r.coefficients.minCoeff() : 0.0;
  r.cyclic = r.min_abs > threshold;
  return r;
}

ProjectionReport invariant_projection_check(const SpectralData& sd, const std::vector<int>& J) {
  const int n = sd.size();
  const int m = static_cast<int>(J.size());
  if (m == 0 || m > n) throw NumericError("invariant_projection_check: bad index set");
  Eigen::MatrixXd B(n, m);
  for (int i = 0; i < m; ++i) {
    if (J[i] < 0 || J[i] >= n) throw NumericError("invariant_projection_check: index out of range");
    B.col(i) = sd.F.col(J[i]);
  }
  const Eigen::MatrixXd Kstar = sd.K.transpose();

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
  const Eigen::MatrixXd KB = Kstar * B;
  ProjectionReport r{};
  r.invariance_residual =
      spectral_norm(KB - Q * (Q.transpose() * KB)) / (spectral_norm(sd.K) * spectral_norm(B));

  // compressed pair in the basis B: S as a form, K* as the operator matrix
  const Eigen::MatrixXd Sc = B.transpose() * sd.S * B;
  const Eigen::MatrixXd BtB = B.transpose() * B;
  const Eigen::MatrixXd X = BtB.ldlt().solve(B.transpose() * KB);  // matrix of K*|_V
  r.symmetrizability_residual =
      spectral_norm(Sc * X.transpose() - X * Sc) / (spectral_norm(Sc) * spectral_norm(X));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Sc, Eigen::EigenvaluesOnly);
  r.compressed_s_min = es.eigenvalues()(0);

  Eigen::EigenSolver<Eigen::MatrixXd> ev(X);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(ev.eigenvectors().real());
  const double smin = svd.singularValues().tail(1)(0);
  const double smax = svd.singularValues()(0);
  r.diagonalizable = ev.eigenvectors().imag().cwiseAbs().maxCoeff() < 1e-8 &&
                     smin > 1e-10 * smax;
  return r;
}

BariSystem bari_construct(const Eigen::MatrixXd& F, const Eigen::VectorXd& lambda) {
  const int n = static_cast<int>(F.rows());
  if (F.cols() != n || lambda.size() != n)
    throw NumericError("bari_construct: F must be square with one eigenvalue per column");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(F.transpose());
  if (std::abs(lu.determinant()) == 0.0) throw NumericError("bari_construct: F is singular");

  BariSystem b;
  b.F = F;
  b.G = lu.solve(Eigen::MatrixXd::Identity(n, n));  // G = F^{-T}
  b.S = b.G * b.G.transpose();                      // = (F F^T)^{-1}
  b.A = F * lambda.asDiagonal() * F.transpose();
  b.K = b.S * b.A;
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    worst = std::max(worst, (b.S * b.F.col(j) - b.G.col(j)).norm() / b.G.col(j).norm());
  b.recovery_residual = worst;
  return b;
}

}  // namespace nps
