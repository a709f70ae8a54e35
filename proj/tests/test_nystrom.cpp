#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nps/nystrom.hpp"

using namespace nps;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Closed-form spectrum of the discretized single layer on circle(r) with n
// nodes: -r log r on constants, r/(2m) twice for 1 <= m < n/2, r/n at Nyquist.
std::vector<double> circle_s_spectrum(double r, int n) {
  std::vector<double> eig;
  eig.push_back(-r * std::log(r));
  for (int m = 1; m < n / 2; ++m) {
    eig.push_back(r / (2.0 * m));
    eig.push_back(r / (2.0 * m));
  }
  eig.push_back(r / n);
  std::sort(eig.begin(), eig.end());
  return eig;
}

const DiscretizedOperators& circle_ops() {
  static const DiscretizedOperators ops = assemble(Curve2D::circle(0.25), 128);
  return ops;
}

const DiscretizedOperators& ellipse_ops() {
  static const DiscretizedOperators ops = [] {
    AssembleOptions o;
    o.auto_rescale = true;
    return assemble(Curve2D::ellipse(1.0, 0.5), 128, o);
  }();
  return ops;
}

}  // namespace

TEST_SUITE("nystrom") {

TEST_CASE("grid weights and samples") {
  const BoundaryGrid g = BoundaryGrid::make(Curve2D::circle(0.25), 16);
  CHECK(g.n == 16);
  CHECK(g.t(3) == doctest::Approx(2.0 * kPi * 3 / 16).epsilon(1e-15));
  CHECK(g.w(5) == doctest::Approx(0.25 * 2.0 * kPi / 16).epsilon(1e-13));
  CHECK(g.w.sum() == doctest::Approx(2.0 * kPi * 0.25).epsilon(1e-13));  // circumference
  const Eigen::VectorXd f = g.sample([](double t) { return std::sin(t); });
  CHECK(f(4) == doctest::Approx(std::sin(g.t(4))).epsilon(1e-15));
  CHECK_THROWS_AS(BoundaryGrid::make(Curve2D::circle(0.25), 15), GeometryError);
  CHECK_THROWS_AS(BoundaryGrid::make(Curve2D::circle(0.25), 4), GeometryError);
}

TEST_CASE("double-layer matrix on the circle has spectrum {1, 0, ...}") {
  const DiscretizedOperators& ops = circle_ops();
  Eigen::EigenSolver<Eigen::MatrixXd> es(ops.K);
  std::vector<double> eig(ops.grid.n);
  for (int i = 0; i < ops.grid.n; ++i) {
    CHECK(std::abs(es.eigenvalues()(i).imag()) <= 1e-12);
    eig[i] = es.eigenvalues()(i).real();
  }
  std::sort(eig.begin(), eig.end());
  CHECK(std::abs(eig.back() - 1.0) <= 1e-11);
  CHECK(std::abs(eig[ops.grid.n - 2]) <= 1e-11);
  CHECK(std::abs(eig.front()) <= 1e-11);
}

TEST_CASE("single-layer matrix on the circle matches the Fourier spectrum") {
  const DiscretizedOperators& ops = circle_ops();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.S);
  const std::vector<double> expected = circle_s_spectrum(0.25, 128);
  for (int i = 0; i < 128; ++i)
    CHECK(std::abs(es.eigenvalues()(i) - expected[i]) <= 1e-10);
  CHECK(ops.lambda_min_S == doctest::Approx(0.25 / 128).epsilon(1e-8));
}

TEST_CASE("operator application in nodal variables: K 1 = 1") {
  const DiscretizedOperators& ops = ellipse_ops();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ops.grid.n);
  const Eigen::VectorXd k1 = ops.apply_nodal(ops.K, ones);
  CHECK((k1 - ones).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("weighted transform round trip") {
  const DiscretizedOperators& ops = ellipse_ops();
  const Eigen::VectorXd f = ops.grid.sample([](double t) { return std::cos(3 * t); });
  CHECK((ops.from_weighted(ops.to_weighted(f)) - f).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("symmetrizability and factorization residuals") {
  const DiscretizedOperators& c = circle_ops();
  const double cn = spectral_norm(c.S) * spectral_norm(c.K);
  CHECK(c.plemelj_residual <= 1e-12 * cn);

  const DiscretizedOperators& e = ellipse_ops();
  CHECK(e.plemelj_residual <= 1e-9 * spectral_norm(e.S) * spectral_norm(e.K));
  CHECK(e.factorization_residual <= 1e-9 * spectral_norm(e.S) * spectral_norm(e.A));
}

TEST_CASE("kite residual drops by 100x from n=64 to n=128") {
  AssembleOptions o;
  o.auto_rescale = true;
  const DiscretizedOperators k64 = assemble(Curve2D::kite(), 64, o);
  const DiscretizedOperators k128 = assemble(Curve2D::kite(), 128, o);
  CHECK(k64.plemelj_residual >= 100.0 * k128.plemelj_residual);
}

TEST_CASE("auto rescale reports the factor and restores positivity") {
  CHECK_THROWS_AS(assemble(Curve2D::circle(1.5), 64), PositivityError);
  AssembleOptions o;
  o.auto_rescale = true;
  const DiscretizedOperators ops = assemble(Curve2D::circle(1.5), 64, o);
  CHECK(ops.scale_factor == doctest::Approx(0.5 / 3.0).epsilon(1e-4));
  CHECK(ops.lambda_min_S > 0.0);
}

TEST_CASE("Dirichlet-to-Neumann eigenvalues m/r on the circle") {
  const DiscretizedOperators& ops = circle_ops();
  const Eigen::MatrixXd dtn = dtn_matrix(ops);
  const double r = 0.25;
  for (int m : {1, 3, 7}) {
    for (int phase = 0; phase < 2; ++phase) {
      const Eigen::VectorXd v = ops.to_weighted(ops.grid.sample([&](double t) {
        return phase == 0 ? std::cos(m * t) : std::sin(m * t);
      }));
      CHECK((dtn * v - (m / r) * v).norm() <= 1e-8 * v.norm());
    }
  }
  const Eigen::VectorXd c = ops.to_weighted(Eigen::VectorXd::Ones(128));
  CHECK((dtn * c).norm() <= 1e-8 * c.norm());
}

TEST_CASE("DtN agrees with the factor identity 2 Lambda = S^{-1} - A") {
  const DiscretizedOperators& ops = ellipse_ops();
  const Eigen::MatrixXd dtn = dtn_matrix(ops);
  const Eigen::MatrixXd sinv =
      Eigen::LLT<Eigen::MatrixXd>(ops.S).solve(Eigen::MatrixXd::Identity(128, 128));
  CHECK(dtn_factor_residual(ops, dtn) <= 1e-9 * spectral_norm(sinv));
}

TEST_CASE("spectral norm matches Eigen's SVD") {
  Eigen::MatrixXd m(2, 2);
  m << 3, 0, 0, -4;
  CHECK(spectral_norm(m) == doctest::Approx(4.0).epsilon(1e-14));
}

}  // TEST_SUITE
