#include "nps/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include "nps/kernels.hpp"

namespace nps {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Kress product-quadrature weights for the periodic log kernel:
//   int_0^{2pi} ln(4 sin^2((t-s)/2)) g(s) ds  ~=  sum_j R_{|i-j| mod n} g(s_j)
// on the uniform grid, with
//   R_d = -(4pi/n) [ sum_{m=1}^{n/2-1} cos(2pi m d/n)/m + (-1)^d / n ].
Eigen::VectorXd kress_log_weights(int n) {
  Eigen::VectorXd R(n);
  for (int d = 0; d < n; ++d) {
    double acc = 0.0;
    for (int m = 1; m < n / 2; ++m) acc += std::cos(2.0 * kPi * m * d / n) / m;
    acc += (d % 2 == 0 ? 1.0 : -1.0) / n;
    R(d) = -(4.0 * kPi / n) * acc;
  }
  return R;
}

// Smooth remainder of the log splitting,
//   M(t,s) = -(1/4pi) ln( |x(t)-x(s)|^2 / (4 sin^2((t-s)/2)) ),
// with the diagonal limit -(1/2pi) ln |x'(t)|.
double kress_smooth_part(const CurvePoint& xt, const CurvePoint& xs, double dt) {
  const double s2 = 2.0 * std::sin(0.5 * dt);
  const double r2 = (xt.position - xs.position).squaredNorm();
  if (r2 == 0.0 || s2 == 0.0) return -std::log(xt.speed) / (2.0 * kPi);
  return -std::log(r2 / (s2 * s2)) / (4.0 * kPi);
}

}  // namespace

BoundaryGrid BoundaryGrid::make(const Curve2D& curve, int n) {
  if (n < 8 || n % 2 != 0) throw GeometryError("BoundaryGrid: n must be even and >= 8");
  BoundaryGrid g{curve, n, Eigen::VectorXd(n), {}, Eigen::VectorXd(n)};
  g.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    g.t(i) = 2.0 * kPi * i / n;
    g.points.push_back(curve.at(g.t(i)));
    g.w(i) = g.points[i].speed * 2.0 * kPi / n;
  }
  return g;
}

Eigen::VectorXd BoundaryGrid::sample(const std::function<double(double)>& f) const {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = f(t(i));
  return v;
}

Eigen::VectorXd BoundaryGrid::sample_xy(
    const std::function<double(const Eigen::Vector2d&)>& f) const {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = f(points[i].position);
  return v;
}

double BoundaryGrid::mesh_spacing() const { return w.maxCoeff(); }

Eigen::VectorXd DiscretizedOperators::to_weighted(const Eigen::VectorXd& nodal) const {
  return grid.w.array().sqrt() * nodal.array();
}

Eigen::VectorXd DiscretizedOperators::from_weighted(const Eigen::VectorXd& hat) const {
  return hat.array() / grid.w.array().sqrt();
}

Eigen::VectorXd DiscretizedOperators::apply_nodal(const Eigen::MatrixXd& T_hat,
                                                  const Eigen::VectorXd& f) const {
  return from_weighted(T_hat * to_weighted(f));
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

DiscretizedOperators assemble(const Curve2D& curve, int n, const AssembleOptions& opts) {
  Curve2D c = curve;
  double factor = 1.0;
  if (opts.auto_rescale) {
    RescaleResult rr = rescale_for_positivity(curve);
    c = rr.curve;
    factor = rr.factor;
  }
  BoundaryGrid grid = BoundaryGrid::make(c, n);

  const Eigen::VectorXd R = kress_log_weights(n);
  Eigen::MatrixXd S_nod(n, n), K_nod(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dt = grid.t(i) - grid.t(j);
      const int d = (i - j + n) % n;
      const double quad =
          -R(d) / (4.0 * kPi) + (2.0 * kPi / n) * kress_smooth_part(grid.points[i], grid.points[j], dt);
      S_nod(i, j) = quad * grid.points[j].speed;
      K_nod(i, j) = 2.0 * k_value(grid.points[i], grid.points[j]) * grid.w(j);
    }
  }

  const Eigen::ArrayXd sqw = grid.w.array().sqrt();
  DiscretizedOperators ops{std::move(grid), {}, {}, {}, {}, factor, 0.0, 0.0, 0.0};
  ops.S.noalias() = (sqw.matrix().asDiagonal() * S_nod) * sqw.inverse().matrix().asDiagonal();
  ops.S = 0.5 * (ops.S + ops.S.transpose()).eval();
  ops.K.noalias() = (sqw.matrix().asDiagonal() * K_nod) * sqw.inverse().matrix().asDiagonal();
  ops.Kstar = ops.K.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.S, Eigen::EigenvaluesOnly);
  ops.lambda_min_S = es.eigenvalues()(0);
  if (ops.lambda_min_S <= opts.positivity_floor)
    throw PositivityError(
        "assemble: single layer is not positive definite on this grid "
        "(lambda_min = " +
        std::to_string(ops.lambda_min_S) +
        "); shrink the curve first (rescale_for_positivity or auto_rescale)");

  Eigen::LLT<Eigen::MatrixXd> llt(ops.S);
  Eigen::MatrixXd X = llt.solve(ops.K);
  ops.A = 0.5 * (X + X.transpose());

  ops.plemelj_residual = spectral_norm(ops.S * ops.Kstar - ops.K * ops.S);
  ops.factorization_residual = spectral_norm(ops.K - ops.S * ops.A);
  return ops;
}

Eigen::MatrixXd dtn_matrix(const DiscretizedOperators& ops) {
  const int n = ops.grid.n;
  Eigen::LLT<Eigen::MatrixXd> llt(ops.S);
  Eigen::MatrixXd Y = llt.solve(Eigen::MatrixXd::Identity(n, n) - ops.K);
  Eigen::MatrixXd dtn = 0.5 * Y.transpose();
  return 0.5 * (dtn + dtn.transpose()).eval();
}

double dtn_factor_residual(const DiscretizedOperators& ops, const Eigen::MatrixXd& dtn) {
  Eigen::LLT<Eigen::MatrixXd> llt(ops.S);
  const Eigen::MatrixXd Sinv = llt.solve(Eigen::MatrixXd::Identity(ops.grid.n, ops.grid.n));
  return spectral_norm(2.0 * dtn - (Sinv - ops.A));
}

double single_layer_potential(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                              const Eigen::Vector2d& x) {
  double acc = 0.0;
  for (int j = 0; j < grid.n; ++j)
    acc += log_kernel(x, grid.points[j].position) * density(j) * grid.w(j);
  return acc;
}

double double_layer_potential(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                              const Eigen::Vector2d& x) {
  double acc = 0.0;
  for (int j = 0; j < grid.n; ++j)
    acc += double_layer_kernel(x, grid.points[j].position, grid.points[j].normal) * density(j) *
           grid.w(j);
  return acc;
}

Eigen::Vector2d single_layer_gradient(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                                      const Eigen::Vector2d& x) {
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int j = 0; j < grid.n; ++j)
    acc += log_kernel_gradient(x, grid.points[j].position) * density(j) * grid.w(j);
  return acc;
}

double nearest_node_distance(const BoundaryGrid& grid, const Eigen::Vector2d& x) {
  double d2 = std::numeric_limits<double>::max();
  for (int j = 0; j < grid.n; ++j) d2 = std::min(d2, (grid.points[j].position - x).squaredNorm());
  return std::sqrt(d2);
}

namespace {

// Boundary values (Sf)(t), (Kf)(t), (K*f)(t) on a grid shifted so that t is a
// node, with doubling until the values settle.
struct BoundaryValues {
  double Sf, Kf, Ksf;
  bool converged;
};

BoundaryValues boundary_values(const Curve2D& curve, const std::function<double(double)>& f,
                               double t) {
  BoundaryValues out{0.0, 0.0, 0.0, false};
  double prev_S = 0.0, prev_K = 0.0, prev_Ks = 0.0;
  for (int n = 128; n <= (1 << 13); n *= 2) {
    const Eigen::VectorXd R = kress_log_weights(n);
    const CurvePoint xt = curve.at(t);
    double S = 0.0, K = 0.0, Ks = 0.0;
    for (int j = 0; j < n; ++j) {
      const double sj = t + 2.0 * kPi * j / n;
      const CurvePoint ys = curve.at(sj);
      const double fj = f(sj);
      const double quad =
          -R(j) / (4.0 * kPi) + (2.0 * kPi / n) * kress_smooth_part(xt, ys, t - sj);
      const double wj = ys.speed * 2.0 * kPi / n;
      S += quad * ys.speed * fj;
      K += 2.0 * k_value(xt, ys) * wj * fj;
      Ks += 2.0 * kstar_value(xt, ys) * wj * fj;
    }
    if (n > 128) {
      const double err = std::max({std::abs(S - prev_S), std::abs(K - prev_K),
                                   std::abs(Ks - prev_Ks)});
      if (err <= 1e-13 * (1.0 + std::abs(S) + std::abs(K) + std::abs(Ks))) {
        out = {S, K, Ks, true};
        return out;
      }
    }
    prev_S = S;
    prev_K = K;
    prev_Ks = Ks;
  }
  out = {prev_S, prev_K, prev_Ks, false};
  return out;
}

// S_f, n.grad S_f and D_f at the off-boundary point x(t) + side*eps*n(t),
// by the trapezoid rule with grid doubling. The doubling reuses previous
// sums (T_{2n} = T_n/2 + new odd nodes).
struct PotentialTriplet {
  double S, dnS, D;
  bool converged;
};

PotentialTriplet off_boundary_triplet(const Curve2D& curve, const std::function<double(double)>& f,
                                      double t, double eps, int side) {
  const CurvePoint xt = curve.at(t);
  const Eigen::Vector2d x = xt.position + side * eps * xt.normal;
  const Eigen::Vector2d nx = xt.normal;

  auto node_term = [&](double s, double& gS, double& gdnS, double& gD) {
    const CurvePoint ys = curve.at(s);
    const double fs = f(s) * ys.speed;
    gS = log_kernel(x, ys.position) * fs;
    gdnS = nx.dot(log_kernel_gradient(x, ys.position)) * fs;
    gD = double_layer_kernel(x, ys.position, ys.normal) * fs;
  };

  int n = 512;
  double SS = 0.0, GG = 0.0, DD = 0.0;
  for (int j = 0; j < n; ++j) {
    double a, b, c;
    node_term(t + 2.0 * kPi * j / n, a, b, c);
    SS += a;
    GG += b;
    DD += c;
  }
  double h = 2.0 * kPi / n;
  double prev_S = SS * h, prev_G = GG * h, prev_D = DD * h;
  int settled = 0;
  while (n < (1 << 21)) {
    // refine: add odd nodes of the doubled grid
    double aS = 0.0, aG = 0.0, aD = 0.0;
    for (int j = 0; j < n; ++j) {
      double a, b, c;
      node_term(t + 2.0 * kPi * (2 * j + 1) / (2 * n), a, b, c);
      aS += a;
      aG += b;
      aD += c;
    }
    n *= 2;
    h = 2.0 * kPi / n;
    SS += aS;
    GG += aG;
    DD += aD;
    const double curS = SS * h, curG = GG * h, curD = DD * h;
    const double err = std::max({std::abs(curS - prev_S), std::abs(curG - prev_G),
                                 std::abs(curD - prev_D)});
    const double scale = 1.0 + std::abs(curS) + std::abs(curG) + std::abs(curD);
    prev_S = curS;
    prev_G = curG;
    prev_D = curD;
    if (err <= 1e-12 * scale) {
      if (++settled >= 2) return {curS, curG, curD, true};
    } else {
      settled = 0;
    }
  }
  return {prev_S, prev_G, prev_D, false};
}

// Neville extrapolation to eps = 0; returns the extrapolated value and a
// tail estimate |T_kk - T_{k-1,k-1}|.
std::pair<double, double> neville_to_zero(const std::vector<double>& eps,
                                          const std::vector<double>& val) {
  const int m = static_cast<int>(eps.size());
  std::vector<double> T(val);
  double prev_diag = T[0];
  double tail = 0.0;
  for (int k = 1; k < m; ++k) {
    for (int i = m - 1; i >= k; --i)
      T[i] = T[i] + eps[i] * (T[i] - T[i - 1]) / (eps[i - k] - eps[i]);
    tail = std::abs(T[m - 1] - prev_diag);
    prev_diag = T[m - 1];
  }
  return {T[m - 1], tail};
}

}  // namespace

double JumpReport::max_residual() const {
  return std::max({s_continuity, s_boundary, dn_s_interior, dn_s_exterior, d_interior, d_exterior});
}

JumpReport jump_check(const Curve2D& curve, const std::function<double(double)>& density,
                      double t, const std::vector<double>& eps_sequence) {
  if (eps_sequence.size() < 2) throw NumericError("jump_check: need at least two eps values");
  const BoundaryValues bv = boundary_values(curve, density, t);
  const double ft = density(t);

  const int m = static_cast<int>(eps_sequence.size());
  std::vector<double> Si(m), Se(m), Gi(m), Ge(m), Di(m), De(m);
  bool all_ok = bv.converged;
  for (int k = 0; k < m; ++k) {
    const PotentialTriplet in = off_boundary_triplet(curve, density, t, eps_sequence[k], -1);
    const PotentialTriplet ex = off_boundary_triplet(curve, density, t, eps_sequence[k], +1);
    all_ok = all_ok && in.converged && ex.converged;
    Si[k] = in.S;
    Gi[k] = in.dnS;
    Di[k] = in.D;
    Se[k] = ex.S;
    Ge[k] = ex.dnS;
    De[k] = ex.D;
  }

  const auto [si, e1] = neville_to_zero(eps_sequence, Si);
  const auto [se, e2] = neville_to_zero(eps_sequence, Se);
  const auto [gi, e3] = neville_to_zero(eps_sequence, Gi);
  const auto [ge, e4] = neville_to_zero(eps_sequence, Ge);
  const auto [di, e5] = neville_to_zero(eps_sequence, Di);
  const auto [de, e6] = neville_to_zero(eps_sequence, De);

  JumpReport r;
  r.s_continuity = std::abs(si - se);
  r.s_boundary = std::abs(si - bv.Sf);
  r.dn_s_interior = std::abs(gi - (0.5 * ft - 0.5 * bv.Ksf));
  r.dn_s_exterior = std::abs(ge - (-0.5 * ft - 0.5 * bv.Ksf));
  r.d_interior = std::abs(di - (-0.5 * ft - 0.5 * bv.Kf));
  r.d_exterior = std::abs(de - (0.5 * ft - 0.5 * bv.Kf));
  r.extrapolation_error = std::max({e1, e2, e3, e4, e5, e6});
  r.converged = all_ok;
  return r;
}

}  // namespace nps
