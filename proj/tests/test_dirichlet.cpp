#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "nps/dirichlet.hpp"

using namespace nps;

namespace {

constexpr double kPi = 3.14159265358979323846;

const DiscretizedOperators& small_ellipse_ops() {
  static const DiscretizedOperators ops = assemble(Curve2D::ellipse(0.4, 0.2), 256);
  return ops;
}

const DiscretizedOperators& rescaled_ellipse_ops() {
  static const DiscretizedOperators ops = [] {
    AssembleOptions o;
    o.auto_rescale = true;
    return assemble(Curve2D::ellipse(1.0, 0.5), 256, o);
  }();
  return ops;
}

const SpectralData& rescaled_ellipse_sd() {
  static const SpectralData sd =
      factorize(SymmetrizablePair::from_ops(rescaled_ellipse_ops(), 1e-6));
  return sd;
}

// cubically extrapolated boundary limit along the inward normal
double normal_limit(const std::function<double(const Eigen::Vector2d&)>& u,
                    const CurvePoint& p, const std::vector<double>& eps) {
  const int m = static_cast<int>(eps.size());
  std::vector<double> val(m);
  for (int i = 0; i < m; ++i) val[i] = u(p.position - eps[i] * p.normal);
  // Neville tableau toward eps = 0
  for (int k = 1; k < m; ++k)
    for (int i = 0; i < m - k; ++i)
      val[i] = (eps[i + k] * val[i] - eps[i] * val[i + 1]) / (eps[i + k] - eps[i]);
  return val[0];
}

}  // namespace

TEST_SUITE("dirichlet") {

TEST_CASE("harmonic polynomial data is reproduced in the interior") {
  const DiscretizedOperators& ops = small_ellipse_ops();
  const auto exact = [](const Eigen::Vector2d& x) { return x.x() * x.x() - x.y() * x.y(); };
  const HarmonicSolution sol = solve_dirichlet(ops, ops.grid.sample_xy(exact));
  CHECK(!sol.near_boundary({0.1, 0.05}));
  CHECK(std::abs(sol.eval({0.1, 0.05}) - 0.0075) <= 1e-6);
  CHECK(std::abs(sol.eval({-0.2, 0.02}) - exact({-0.2, 0.02})) <= 1e-6);
  CHECK(sol.path_agreement <= 1e-9);

  const Eigen::Vector2d g = sol.grad({0.1, 0.05});
  CHECK(std::abs(g.x() - 0.2) <= 1e-6);
  CHECK(std::abs(g.y() + 0.1) <= 1e-6);
}

TEST_CASE("constant data extends to the constant") {
  const DiscretizedOperators& ops = rescaled_ellipse_ops();
  const HarmonicSolution sol = solve_dirichlet(ops, Eigen::VectorXd::Ones(ops.grid.n));
  for (const Eigen::Vector2d& x :
       {Eigen::Vector2d{0.05, 0.02}, Eigen::Vector2d{-0.1, 0.03}, Eigen::Vector2d{0.2, -0.05}})
    CHECK(std::abs(sol.eval(x) - 1.0) <= 1e-8);
}

TEST_CASE("zero data gives the zero solution exactly") {
  const DiscretizedOperators& ops = small_ellipse_ops();
  const HarmonicSolution sol = solve_dirichlet(ops, Eigen::VectorXd::Zero(ops.grid.n));
  CHECK(sol.eval({0.1, 0.0}) == 0.0);
  CHECK_THROWS_AS(solve_dirichlet(ops, Eigen::VectorXd::Zero(7)), NumericError);
}

TEST_CASE("exterior transform matches the decaying disk extension") {
  // mean-zero data keeps the single-layer moment free of the log term, so the
  // transform coincides with the unique decaying exterior extension
  const DiscretizedOperators ops = assemble(Curve2D::circle(0.25), 128);
  const Eigen::VectorXd f = ops.grid.sample([](double t) { return std::cos(t); });
  const HarmonicSolution sol = solve_dirichlet(ops, f, true);
  const auto exact = [](const Eigen::Vector2d& x) {  // (r/|x|) cos theta
    return 0.25 * x.x() / x.squaredNorm();
  };
  for (const Eigen::Vector2d& x :
       {Eigen::Vector2d{0.5, 0.0}, Eigen::Vector2d{0.0, 0.7}, Eigen::Vector2d{-0.4, 0.3}})
    CHECK(std::abs(sol.eval(x) - exact(x)) <= 1e-8);
}

TEST_CASE("modal solution of the top mode approaches its trace") {
  const DiscretizedOperators& ops = rescaled_ellipse_ops();
  const SpectralData& sd = rescaled_ellipse_sd();
  const Eigen::VectorXd g0 = ops.from_weighted(sd.G.col(0));
  const ModalSolution m = modal_solution(ops, sd, g0);

  const int node = 9;
  const double lim = normal_limit([&](const Eigen::Vector2d& x) { return m.eval(x); },
                                  ops.grid.points[node], {0.08, 0.065, 0.05, 0.035});
  CHECK(std::abs(lim - g0(node)) <= 1e-4 * g0.cwiseAbs().maxCoeff());
}

TEST_CASE("pure kernel data uses only the double layer") {
  const DiscretizedOperators& ops = rescaled_ellipse_ops();
  const SpectralData& sd = rescaled_ellipse_sd();
  REQUIRE(sd.n_retained < sd.size());
  const Eigen::VectorXd h_hat = sd.sqrtS * sd.kernel_basis().col(0);
  const Eigen::VectorXd h = ops.from_weighted(h_hat);
  const ModalSolution m = modal_solution(ops, sd, h);
  const Eigen::Vector2d x(0.08, -0.03);
  CHECK(std::abs(m.eval(x) - (-2.0 * double_layer_potential(ops.grid, m.h, x))) <= 1e-10);
  CHECK((m.h - h).cwiseAbs().maxCoeff() <= 1e-9 * h.cwiseAbs().maxCoeff());
}

TEST_CASE("modal and direct solutions agree") {
  const DiscretizedOperators& ops = rescaled_ellipse_ops();
  const SpectralData& sd = rescaled_ellipse_sd();
  const Eigen::VectorXd f = ops.grid.sample(
      [](double t) { return std::cos(t) + 0.3 * std::sin(2 * t) + 0.1 * std::cos(5 * t); });
  const HarmonicSolution direct = solve_dirichlet(ops, f);
  const ModalSolution modal = modal_solution(ops, sd, f);
  for (const Eigen::Vector2d& x :
       {Eigen::Vector2d{0.1, 0.0}, Eigen::Vector2d{-0.05, 0.04}, Eigen::Vector2d{0.15, -0.02}})
    CHECK(std::abs(modal.eval(x) - direct.eval(x)) <= 1e-6);
}

TEST_CASE("modal identity A g_j = lambda_j f_j") {
  CHECK(modal_identity_residual(rescaled_ellipse_ops(), rescaled_ellipse_sd(), 8) <= 1e-9);
}

TEST_CASE("dipole trace has its closed form on the circle") {
  const BoundaryGrid grid = BoundaryGrid::make(Curve2D::circle(0.25), 64);
  const Eigen::Vector2d z(0.5, 0.0), a(1.0, 0.0);
  const Eigen::VectorXd q = point_source_density(grid, z, a);
  for (int i = 0; i < grid.n; ++i) {
    const double t = grid.t(i);
    const double dx = 0.5 - 0.25 * std::cos(t), dy = -0.25 * std::sin(t);
    const double expected = -dx / (2.0 * kPi * (dx * dx + dy * dy));
    CHECK(std::abs(q(i) - expected) <= 1e-14);
  }
}

TEST_CASE("disk solutions match the Poisson integral") {
  const std::vector<Eigen::Vector2d> pts{{0.0, 0.0}, {0.25, 0.0}, {0.1, 0.15}};
  const GreenReport cosine =
      green_identity_check(0.5, [](double t) { return std::cos(t); }, pts);
  CHECK(cosine.max_residual <= 1e-8);
  CHECK(std::abs(cosine.u_numeric[0]) <= 1e-10);               // mean of cos is 0
  CHECK(std::abs(cosine.u_numeric[1] - 0.5) <= 1e-8);          // (r/rho) cos 0 at r = rho/2
  CHECK(std::abs(cosine.u_exact[1] - 0.5) <= 1e-10);

  const GreenReport constant = green_identity_check(0.5, [](double) { return 1.0; }, pts);
  CHECK(constant.max_residual <= 1e-8);
  for (double u : constant.u_numeric) CHECK(std::abs(u - 1.0) <= 1e-8);

  CHECK_THROWS_AS(green_identity_check(0.5, [](double) { return 1.0; }, {{0.6, 0.0}}),
                  NumericError);
}

}  // TEST_SUITE
