#include "nps/zeta_eta.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nps/errors.hpp"

namespace nps {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Accelerated alternating series for the Dirichlet eta function,
//   eta(s) = sum_{k>=0} (-1)^k (k+1)^{-s},
// by Chebyshev-weighted summation (error ~ (3+sqrt 8)^{-n}); effective well
// beyond the convergence abscissa, down to s ~ -1/2.
double dirichlet_eta(double s, int n = 72) {
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, acc = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    acc += c * std::pow(static_cast<double>(k + 1), -s);
    b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  return acc / d;
}

// Richardson-extrapolated central difference derivative.
template <typename F>
double central_derivative(const F& f, double x0, double h0, int levels = 5) {
  std::vector<double> T(levels);
  for (int k = 0; k < levels; ++k) {
    const double h = h0 / (1 << k);
    T[k] = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
  }
  for (int m = 1; m < levels; ++m)
    for (int k = levels - 1; k >= m; --k)
      T[k] = (std::pow(4.0, m) * T[k] - T[k - 1]) / (std::pow(4.0, m) - 1.0);
  return T[levels - 1];
}

// Polynomial extrapolation of g(h) to h = 0.
double neville_limit(const std::vector<double>& h, const std::vector<double>& g) {
  std::vector<double> T(g);
  const int m = static_cast<int>(h.size());
  for (int k = 1; k < m; ++k)
    for (int i = m - 1; i >= k; --i)
      T[i] = T[i] + h[i] * (T[i] - T[i - 1]) / (h[i - k] - h[i]);
  return T[m - 1];
}

}  // namespace

double riemann_zeta(double s) {
  if (std::abs(s - 1.0) < 1e-8) throw NumericError("riemann_zeta: pole at s = 1");
  if (s > -0.5) return dirichlet_eta(s) / (1.0 - std::pow(2.0, 1.0 - s));
  // reflection: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s);
  // sin_pi keeps the trivial zeros at negative even integers exact.
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * boost::math::sin_pi(0.5 * s) *
         std::tgamma(1.0 - s) * riemann_zeta(1.0 - s);
}

double riemann_zeta_prime_minus1() {
  return central_derivative([](double s) { return riemann_zeta(s); }, -1.0, 1.0 / 16.0);
}

double zeta_sphere(double z) {
  if (std::abs(z - 2.0) < 1e-8) throw NumericError("zeta_sphere: pole at z = 2");
  return (1.0 - std::pow(2.0, 1.0 - z)) * riemann_zeta(z - 1.0);
}

double zeta_sphere_residue_at_2() {
  const std::vector<double> h{0.04, 0.02, 0.01, 0.005, 0.0025};
  std::vector<double> g(h.size());
  for (size_t i = 0; i < h.size(); ++i)
    g[i] = 0.5 * h[i] * (zeta_sphere(2.0 + h[i]) - zeta_sphere(2.0 - h[i]));
  // symmetric sampling cancels the even Laurent terms
  return neville_limit(h, g);
}

SphereDeterminantReport sphere_determinant() {
  SphereDeterminantReport r{};
  r.zeta_prime_0 = central_derivative([](double z) { return zeta_sphere(z); }, 0.0, 1.0 / 16.0);
  r.glaisher = std::exp(1.0 / 12.0 - riemann_zeta_prime_minus1());
  r.det = std::exp(-r.zeta_prime_0);
  r.closed_form = std::pow(2.0, -1.0 / 6.0) * std::exp(1.0 / 12.0) / r.glaisher;
  return r;
}

double eta_sphere(double s) { return zeta_sphere(-s); }

EtaReport eta_from_spectrum(const Eigen::VectorXd& lambda, double s, double pairing_tol,
                            double floor) {
  std::vector<double> pos, neg;
  double leading = -std::numeric_limits<double>::max();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) leading = std::max(leading, lambda(i));
  if (!(leading > 0.0)) throw NumericError("eta_from_spectrum: no positive leading eigenvalue");

  bool leading_taken = false;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double l = lambda(i);
    if (!leading_taken && l == leading) {
      leading_taken = true;  // the unpaired eigenvalue at 1
      continue;
    }
    if (std::abs(l) < floor) continue;
    (l > 0.0 ? pos : neg).push_back(std::abs(l));
  }
  std::sort(pos.rbegin(), pos.rend());
  std::sort(neg.rbegin(), neg.rend());
  if (pos.size() != neg.size())
    throw NumericError("eta_from_spectrum: unpaired eigenvalues above the floor (" +
                       std::to_string(pos.size()) + " positive vs " + std::to_string(neg.size()) +
                       " negative)");

  EtaReport r{};
  r.value = std::pow(leading, -s);
  r.pairs_used = static_cast<int>(pos.size());
  r.max_pairing_defect = 0.0;
  for (size_t i = 0; i < pos.size(); ++i) {
    r.max_pairing_defect = std::max(r.max_pairing_defect, std::abs(pos[i] - neg[i]));
    r.value += std::pow(pos[i], -s) - std::pow(neg[i], -s);
  }
  if (r.max_pairing_defect > pairing_tol)
    throw NumericError("eta_from_spectrum: +/- pairing defect " +
                       std::to_string(r.max_pairing_defect) + " exceeds tolerance");
  return r;
}

Eigen::VectorXd sphere_spectrum(int nmax) {
  if (nmax < 0) throw NumericError("sphere_spectrum: nmax must be >= 0");
  const int total = (nmax + 1) * (nmax + 1);
  Eigen::VectorXd out(total);
  int at = 0;
  for (int n = 0; n <= nmax; ++n)
    for (int m = 0; m < 2 * n + 1; ++m) out(at++) = 1.0 / (2 * n + 1);
  return out;
}

double sphere_heat_trace(double t) {
  if (!(t > 0.0)) throw NumericError("sphere_heat_trace: t must be positive");
  const int N = static_cast<int>(std::ceil(0.5 * (45.0 / t - 1.0)));
  double acc = 0.0;
  for (int n = N; n >= 0; --n) {
    const double d = 2.0 * n + 1.0;
    acc += d * std::exp(-d * t);
  }
  return acc;
}

HeatTraceFit heat_trace_residue(const Eigen::VectorXd& t_grid) {
  Eigen::VectorXd t = t_grid;
  if (t.size() == 0) {
    t.resize(10);
    for (int i = 0; i < 10; ++i) t(i) = 0.01 * std::pow(10.0, i / 9.0);
  }
  const Eigen::Index m = t.size();
  if (m < 3) throw NumericError("heat_trace_residue: need at least 3 grid points");

  Eigen::MatrixXd M(m, 3);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    M(i, 0) = 1.0 / (t(i) * t(i));
    M(i, 1) = 1.0 / t(i);
    M(i, 2) = 1.0;
    rhs(i) = sphere_heat_trace(t(i));
  }
  const Eigen::Vector3d a = M.colPivHouseholderQr().solve(rhs);

  HeatTraceFit fit{};
  fit.a_m2 = a(0);
  fit.a_m1 = a(1);
  fit.a_0 = a(2);
  fit.fit_residual = ((M * a - rhs).array() / rhs.array()).abs().maxCoeff();
  fit.residue = a(0);
  fit.residue_paper_convention = 2.0 * a(0);
  return fit;
}

}  // namespace nps
