#include "nps/dirichlet.hpp"

#include <cmath>

#include "nps/kernels.hpp"

namespace nps {

namespace {

constexpr double kPi = 3.14159265358979323846;

// grad_x of the double-layer kernel dE/dn_y: with d = y - x,
//   grad_x [ -(1/2pi) (d.n)/|d|^2 ] = (1/2pi) [ n/|d|^2 - 2 (d.n) d/|d|^4 ].
Eigen::Vector2d double_layer_kernel_gradient(const Eigen::Vector2d& x, const Eigen::Vector2d& y,
                                             const Eigen::Vector2d& normal_y) {
  const Eigen::Vector2d d = y - x;
  const double r2 = d.squaredNorm();
  return (normal_y / r2 - 2.0 * d.dot(normal_y) / (r2 * r2) * d) / (2.0 * kPi);
}

Eigen::Vector2d double_layer_gradient(const BoundaryGrid& grid, const Eigen::VectorXd& density,
                                      const Eigen::Vector2d& x) {
  Eigen::Vector2d acc = Eigen::Vector2d::Zero();
  for (int j = 0; j < grid.n; ++j)
    acc += double_layer_kernel_gradient(x, grid.points[j].position, grid.points[j].normal) *
           density(j) * grid.w(j);
  return acc;
}

}  // namespace

double HarmonicSolution::eval(const Eigen::Vector2d& x) const {
  const double s = single_layer_potential(grid, density, x);
  const double d = double_layer_potential(grid, f, x);
  const double u = -s - 2.0 * d;
  return exterior ? -u : u;
}

Eigen::Vector2d HarmonicSolution::grad(const Eigen::Vector2d& x) const {
  const Eigen::Vector2d gs = single_layer_gradient(grid, density, x);
  const Eigen::Vector2d gd = double_layer_gradient(grid, f, x);
  const Eigen::Vector2d gu = -gs - 2.0 * gd;
  return exterior ? (-gu).eval() : gu;
}

bool HarmonicSolution::near_boundary(const Eigen::Vector2d& x) const {
  return nearest_node_distance(grid, x) < grid.mesh_spacing();
}

HarmonicSolution solve_dirichlet(const DiscretizedOperators& ops, const Eigen::VectorXd& f,
                                 bool exterior) {
  if (f.size() != ops.grid.n) throw NumericError("solve_dirichlet: data size mismatch");
  const Eigen::VectorXd f_hat = ops.to_weighted(f);

  // density a = A f two ways: through the factor and through S a = K f
  const Eigen::VectorXd a_factor = ops.A * f_hat;
  Eigen::LLT<Eigen::MatrixXd> llt(ops.S);
  const Eigen::VectorXd a_solve = llt.solve(ops.K * f_hat);

  HarmonicSolution sol{ops.grid, f, ops.from_weighted(a_solve), exterior, 0.0};
  sol.path_agreement =
      (a_factor - a_solve).norm() / std::max(a_solve.norm(), 1e-300);
  return sol;
}

ModalSolution modal_solution(const DiscretizedOperators& ops, const SpectralData& sd,
                             const Eigen::VectorXd& f, int N) {
  if (f.size() != ops.grid.n) throw NumericError("modal_solution: data size mismatch");
  if (N < 0 || N > sd.n_retained) N = sd.n_retained;

  const Eigen::VectorXd psi = sd.sqrtSinv * ops.to_weighted(f);
  const Eigen::VectorXd c_all = sd.Phi.transpose() * psi;

  // kernel component: h_hat = sqrt(S) P_ker psi
  const int n_ker = sd.size() - sd.n_retained;
  Eigen::VectorXd h_hat = Eigen::VectorXd::Zero(sd.size());
  if (n_ker > 0) {
    const Eigen::MatrixXd Pk = sd.kernel_basis();
    h_hat = sd.sqrtS * (Pk * (Pk.transpose() * psi));
  }

  ModalSolution m{ops.grid, ops.from_weighted(h_hat), c_all.head(N), {}, {},
                  sd.lambda.head(N), N};
  m.F_nodal.resize(ops.grid.n, N);
  m.G_nodal.resize(ops.grid.n, N);
  for (int j = 0; j < N; ++j) {
    m.F_nodal.col(j) = ops.from_weighted(sd.F.col(j));
    m.G_nodal.col(j) = ops.from_weighted(sd.G.col(j));
  }
  return m;
}

double ModalSolution::eval(const Eigen::Vector2d& x) const {
  double u = -2.0 * double_layer_potential(grid, h, x);
  for (int j = 0; j < N; ++j)
    u -= c(j) * (lambda(j) * single_layer_potential(grid, F_nodal.col(j), x) +
                 2.0 * double_layer_potential(grid, G_nodal.col(j), x));
  return u;
}

double modal_identity_residual(const DiscretizedOperators& ops, const SpectralData& sd, int N) {
  if (N < 0 || N > sd.n_retained) N = sd.n_retained;
  double worst = 0.0;
  for (int j = 0; j < N; ++j) {
    const Eigen::VectorXd lhs = ops.A * sd.G.col(j);
    const Eigen::VectorXd rhs = sd.lambda(j) * sd.F.col(j);
    worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
  }
  return worst;
}

GreenReport green_identity_check(double radius, const std::function<double(double)>& f_of_t,
                                 const std::vector<Eigen::Vector2d>& points, int n) {
  const Curve2D disk = Curve2D::circle(radius);
  const DiscretizedOperators ops = assemble(disk, n);
  const Eigen::VectorXd f = ops.grid.sample(f_of_t);
  const HarmonicSolution sol = solve_dirichlet(ops, f);

  GreenReport rep{};
  rep.max_residual = 0.0;
  for (const Eigen::Vector2d& x : points) {
    if (x.norm() >= radius)
      throw NumericError("green_identity_check: evaluation point outside the disk");
    // Poisson integral u(x) = (1/2pi) int_0^{2pi} (R^2-|x|^2)/|x-y(t)|^2 f(t) dt,
    // trapezoid with doubling until settled
    double prev = 0.0;
    double val = 0.0;
    for (int m = 512; m <= (1 << 16); m *= 2) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        const double t = 2.0 * kPi * i / m;
        const Eigen::Vector2d y{radius * std::cos(t), radius * std::sin(t)};
        acc += (radius * radius - x.squaredNorm()) / (x - y).squaredNorm() * f_of_t(t);
      }
      val = acc / m;
      if (m > 512 && std::abs(val - prev) <= 1e-13 * (1.0 + std::abs(val))) break;
      prev = val;
    }
    const double u_num = sol.eval(x);
    rep.u_numeric.push_back(u_num);
    rep.u_exact.push_back(val);
    rep.max_residual = std::max(rep.max_residual, std::abs(u_num - val));
  }
  return rep;
}

Eigen::VectorXd point_source_density(const BoundaryGrid& grid, const Eigen::Vector2d& z,
                                     const Eigen::Vector2d& a) {
  Eigen::VectorXd v(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const Eigen::Vector2d d = z - grid.points[i].position;
    v(i) = -a.dot(d) / (2.0 * kPi * d.squaredNorm());
  }
  return v;
}

}  // namespace nps
