#include <doctest.h>

#include <cmath>

#include "nps/kernels.hpp"
#include "nps/nystrom.hpp"

using namespace nps;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("kernels") {

TEST_CASE("fundamental solutions at reference separations") {
  const Eigen::Vector2d o2(0.0, 0.0);
  CHECK(log_kernel(o2, {1.0, 0.0}) == 0.0);
  CHECK(log_kernel(o2, {std::exp(-2.0 * kPi), 0.0}) == doctest::Approx(1.0).epsilon(1e-13));
  const Eigen::Vector3d o3(0.0, 0.0, 0.0);
  CHECK(newton_kernel(o3, {0.0, 1.0, 0.0}) ==
        doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("log kernel gradient is grad of the kernel") {
  const Eigen::Vector2d x(0.3, -0.2), y(-0.1, 0.4);
  const double h = 1e-6;
  const Eigen::Vector2d g = log_kernel_gradient(x, y);
  CHECK(g.x() == doctest::Approx((log_kernel({x.x() + h, x.y()}, y) -
                                  log_kernel({x.x() - h, x.y()}, y)) / (2 * h)).epsilon(1e-7));
  CHECK(g.y() == doctest::Approx((log_kernel({x.x(), x.y() + h}, y) -
                                  log_kernel({x.x(), x.y() - h}, y)) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("double-layer boundary kernel is constant on a circle") {
  // <y - x, n_y> = |x - y|^2 / 2 there, so k = 1/(4 pi) on the unit circle
  const Curve2D c = Curve2D::circle(1.0);
  for (double s : {0.4, 1.9, 4.4}) {
    const double v = k_value(c.at(0.1), c.at(s));
    CHECK(v == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-13));
  }
}

TEST_CASE("diagonal limit is curvature over 4 pi") {
  const Curve2D c = Curve2D::circle(0.3);
  const CurvePoint p = c.at(1.2);
  CHECK(k_value(p, p) == doctest::Approx(1.0 / (4.0 * kPi * 0.3)).epsilon(1e-13));
  // near-diagonal values approach the same limit
  CHECK(k_value(p, c.at(1.2 + 1e-4)) ==
        doctest::Approx(1.0 / (4.0 * kPi * 0.3)).epsilon(1e-6));
}

TEST_CASE("adjoint kernel shares the code path") {
  const Curve2D e = Curve2D::ellipse(1.0, 0.5);
  const CurvePoint x = e.at(0.7), y = e.at(2.9);
  CHECK(kstar_value(x, y) == k_value(y, x));  // exact, same evaluation
}

TEST_CASE("Gauss identity for the double-layer potential") {
  const BoundaryGrid grid = BoundaryGrid::make(Curve2D::ellipse(0.25, 0.125), 256);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.n);
  CHECK(std::abs(double_layer_potential(grid, ones, {2.0, 1.0})) <= 1e-10);   // exterior: 0
  CHECK(double_layer_potential(grid, ones, {0.05, 0.02}) ==
        doctest::Approx(-1.0).epsilon(1e-10));                                 // interior: -1
}

TEST_CASE("zero density gives zero potential and gradient") {
  const BoundaryGrid grid = BoundaryGrid::make(Curve2D::circle(0.25), 64);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(grid.n);
  CHECK(single_layer_potential(grid, z, {0.1, 0.0}) == 0.0);
  CHECK(single_layer_gradient(grid, z, {0.1, 0.0}) == Eigen::Vector2d::Zero());
}

TEST_CASE("jump relations on a circle with f = cos") {
  const JumpReport jr =
      jump_check(Curve2D::circle(0.25), [](double t) { return std::cos(t); }, 0.7);
  CHECK(jr.converged);
  CHECK(jr.s_continuity <= 1e-6);
  CHECK(jr.s_boundary <= 1e-6);
  CHECK(jr.dn_s_interior <= 1e-6);
  CHECK(jr.dn_s_exterior <= 1e-6);
  CHECK(jr.d_interior <= 1e-6);
  CHECK(jr.d_exterior <= 1e-6);
}

TEST_CASE("constant density reproduces the Gauss jump") {
  const JumpReport jr =
      jump_check(Curve2D::kite().scaled(0.2), [](double) { return 1.0; }, 1.1);
  CHECK(jr.d_interior <= 1e-8);
}

TEST_CASE("zero density has exactly zero jump residuals") {
  const JumpReport jr = jump_check(Curve2D::circle(0.25), [](double) { return 0.0; }, 0.3);
  CHECK(jr.max_residual() == 0.0);
}

}  // TEST_SUITE
