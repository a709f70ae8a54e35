#include "nps/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace nps {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
  if (!ok) throw GeometryError(msg);
}

}  // namespace

Curve2D Curve2D::circle(double r) {
  require(r > 0.0, "circle: radius must be positive");
  Curve2D c("circle", 1.0);
  c.param_a = r;
  return c;
}

Curve2D Curve2D::ellipse(double a, double b) {
  require(a > 0.0 && b > 0.0, "ellipse: semiaxes must be positive");
  Curve2D c("ellipse", 1.0);
  c.param_a = a;
  c.param_b = b;
  return c;
}

Curve2D Curve2D::kite() { return Curve2D("kite", 1.0); }

Curve2D Curve2D::star(int k, double eps) {
  require(k >= 2, "star: need k >= 2 arms");
  require(std::abs(eps) < 1.0, "star: |eps| < 1 required for an embedded radial curve");
  Curve2D c("star", 1.0);
  c.param_k = k;
  c.param_eps = eps;
  return c;
}

Curve2D Curve2D::fourier(Eigen::VectorXd cos_coef, Eigen::VectorXd sin_coef) {
  require(cos_coef.size() >= 1, "fourier: need at least the constant coefficient");
  Curve2D c("fourier", 1.0);
  c.cos_coef = std::move(cos_coef);
  c.sin_coef = std::move(sin_coef);
  // Radial positivity on a dense grid; a radial graph cannot self-intersect.
  double rmin = std::numeric_limits<double>::max();
  for (int i = 0; i < 4096; ++i) {
    const double t = 2.0 * kPi * i / 4096.0;
    double r = c.cos_coef(0);
    for (int m = 1; m < c.cos_coef.size(); ++m) r += c.cos_coef(m) * std::cos(m * t);
    for (int m = 1; m <= c.sin_coef.size(); ++m) r += c.sin_coef(m - 1) * std::sin(m * t);
    rmin = std::min(rmin, r);
  }
  require(rmin > 0.0, "fourier: radial profile must stay positive");
  return c;
}

void Curve2D::eval(double t, Eigen::Vector2d& p, Eigen::Vector2d& dp, Eigen::Vector2d& ddp) const {
  const double ct = std::cos(t), st = std::sin(t);
  if (family_ == "circle") {
    const double r = param_a;
    p = {r * ct, r * st};
    dp = {-r * st, r * ct};
    ddp = -p;
  } else if (family_ == "ellipse") {
    p = {param_a * ct, param_b * st};
    dp = {-param_a * st, param_b * ct};
    ddp = -p;
  } else if (family_ == "kite") {
    const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
    p = {ct + 0.65 * c2 - 0.65, 1.5 * st};
    dp = {-st - 1.3 * s2, 1.5 * ct};
    ddp = {-ct - 2.6 * c2, -1.5 * st};
  } else {
    // Radial families rho(t) (cos t, sin t).
    double r = 0.0, dr = 0.0, ddr = 0.0;
    if (family_ == "star") {
      const double k = param_k;
      r = 1.0 + param_eps * std::cos(k * t);
      dr = -param_eps * k * std::sin(k * t);
      ddr = -param_eps * k * k * std::cos(k * t);
    } else {  // fourier
      r = cos_coef(0);
      for (int m = 1; m < cos_coef.size(); ++m) {
        r += cos_coef(m) * std::cos(m * t);
        dr -= cos_coef(m) * m * std::sin(m * t);
        ddr -= cos_coef(m) * m * m * std::cos(m * t);
      }
      for (int m = 1; m <= sin_coef.size(); ++m) {
        r += sin_coef(m - 1) * std::sin(m * t);
        dr += sin_coef(m - 1) * m * std::cos(m * t);
        ddr -= sin_coef(m - 1) * m * m * std::sin(m * t);
      }
    }
    const Eigen::Vector2d e{ct, st}, de{-st, ct};
    p = r * e;
    dp = dr * e + r * de;
    ddp = ddr * e + 2.0 * dr * de - r * e;
  }
}

CurvePoint Curve2D::at(double t) const {
  Eigen::Vector2d p, dp, ddp;
  eval(t, p, dp, ddp);
  p *= scale_;
  dp *= scale_;
  ddp *= scale_;
  CurvePoint cp;
  cp.position = p;
  cp.speed = dp.norm();
  cp.tangent = dp / cp.speed;
  cp.normal = {cp.tangent.y(), -cp.tangent.x()};
  cp.curvature = (dp.x() * ddp.y() - dp.y() * ddp.x()) / (cp.speed * cp.speed * cp.speed);
  return cp;
}

Curve2D Curve2D::scaled(double factor) const {
  require(factor > 0.0, "scaled: factor must be positive");
  Curve2D c(*this);
  c.scale_ *= factor;
  return c;
}

double Curve2D::diameter(int samples) const {
  std::vector<Eigen::Vector2d> pts(samples);
  for (int i = 0; i < samples; ++i) pts[i] = at(2.0 * kPi * i / samples).position;
  double d2 = 0.0;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j) d2 = std::max(d2, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(d2);
}

RescaleResult rescale_for_positivity(const Curve2D& curve) {
  const double diam = curve.diameter();
  if (diam <= 0.5) return {curve, 1.0};
  const double factor = 0.5 / diam;
  return {curve.scaled(factor), factor};
}

SurfaceRev SurfaceRev::sphere(double r) {
  require(r > 0.0, "sphere: radius must be positive");
  SurfaceRev s("sphere");
  s.param_a = r;
  s.param_c = r;
  return s;
}

SurfaceRev SurfaceRev::spheroid(double a, double c) {
  require(a > 0.0 && c > 0.0, "spheroid: semiaxes must be positive");
  SurfaceRev s("spheroid");
  s.param_a = a;
  s.param_c = c;
  return s;
}

SurfaceRev SurfaceRev::perturbed_sphere(Eigen::VectorXd eps) {
  SurfaceRev s("perturbed_sphere");
  s.eps_coef = std::move(eps);
  double rmin = std::numeric_limits<double>::max();
  for (int i = 0; i <= 4096; ++i) {
    const double u = kPi * i / 4096.0;
    double r = 1.0;
    for (int m = 1; m <= s.eps_coef.size(); ++m) r += s.eps_coef(m - 1) * std::cos(m * u);
    rmin = std::min(rmin, r);
  }
  require(rmin > 0.0, "perturbed_sphere: radial profile must stay positive");
  return s;
}

void SurfaceRev::eval(double u, double& rho, double& z, double& drho, double& dz,
                      double& ddrho, double& ddz) const {
  const double cu = std::cos(u), su = std::sin(u);
  if (family_ == "sphere" || family_ == "spheroid") {
    rho = param_a * su;
    z = param_c * cu;
    drho = param_a * cu;
    dz = -param_c * su;
    ddrho = -param_a * su;
    ddz = -param_c * cu;
  } else {  // perturbed_sphere: (rho, z) = r(u) (sin u, cos u)
    double r = 1.0, dr = 0.0, ddr = 0.0;
    for (int m = 1; m <= eps_coef.size(); ++m) {
      const double e = eps_coef(m - 1);
      r += e * std::cos(m * u);
      dr -= e * m * std::sin(m * u);
      ddr -= e * m * m * std::cos(m * u);
    }
    rho = r * su;
    z = r * cu;
    drho = dr * su + r * cu;
    dz = dr * cu - r * su;
    ddrho = ddr * su + 2.0 * dr * cu - r * su;
    ddz = ddr * cu - 2.0 * dr * su - r * cu;
  }
}

SurfacePoint SurfaceRev::at(double u) const {
  double rho, z, drho, dz, ddrho, ddz;
  eval(u, rho, z, drho, dz, ddrho, ddz);
  const double E = drho * drho + dz * dz;
  const double se = std::sqrt(E);
  SurfacePoint sp;
  sp.rho = rho;
  sp.z = z;
  sp.kappa_meridian = (dz * ddrho - drho * ddz) / (E * se);
  // kappa_parallel = -z'/(rho sqrt(E)); at the poles rho -> 0 and z' -> 0,
  // with limit -z''/(rho' sqrt(E)).
  if (std::abs(rho) > 1e-9 * (1.0 + std::abs(z)))
    sp.kappa_parallel = -dz / (rho * se);
  else if (std::abs(drho) > 0.0)
    sp.kappa_parallel = -ddz / (drho * se);
  else
    sp.kappa_parallel = sp.kappa_meridian;
  sp.mean_curvature = 0.5 * (sp.kappa_meridian + sp.kappa_parallel);
  sp.area_element = 2.0 * kPi * rho * se;
  return sp;
}

namespace {

template <typename F>
double adaptive_gauss(const F& f) {
  using boost::math::quadrature::gauss;
  double prev = gauss<double, 16>::integrate(f, 0.0, kPi);
  double cur = gauss<double, 32>::integrate(f, 0.0, kPi);
  if (std::abs(cur - prev) <= 1e-12 * (1.0 + std::abs(cur))) return cur;
  prev = cur;
  cur = gauss<double, 64>::integrate(f, 0.0, kPi);
  if (std::abs(cur - prev) <= 1e-12 * (1.0 + std::abs(cur))) return cur;
  prev = cur;
  cur = gauss<double, 128>::integrate(f, 0.0, kPi);
  if (std::abs(cur - prev) <= 1e-12 * (1.0 + std::abs(cur))) return cur;
  return gauss<double, 256>::integrate(f, 0.0, kPi);
}

// Golden-section refinement of an extremum of f bracketed in [a, b].
template <typename F>
double golden_extremum(const F& f, double a, double b, bool maximize) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 120 && (b - a) > 1e-14; ++it) {
    const bool move_left = maximize ? (f1 > f2) : (f1 < f2);
    if (move_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return maximize ? std::max({f(xm), f1, f2}) : std::min({f(xm), f1, f2});
}

template <typename F>
double scan_extremum(const F& f, bool maximize, int samples = 8192) {
  double best = f(0.0);
  int best_i = 0;
  for (int i = 1; i <= samples; ++i) {
    const double v = f(kPi * i / samples);
    if (maximize ? (v > best) : (v < best)) {
      best = v;
      best_i = i;
    }
  }
  const double a = kPi * std::max(0, best_i - 1) / samples;
  const double b = kPi * std::min(samples, best_i + 1) / samples;
  return golden_extremum(f, a, b, maximize);
}

}  // namespace

ShapeConstants shape_constants(const SurfaceRev& surface) {
  ShapeConstants sc;
  sc.euler_char = 2;
  sc.area = adaptive_gauss([&](double u) { return surface.at(u).area_element; });
  sc.willmore = adaptive_gauss([&](double u) {
    const SurfacePoint sp = surface.at(u);
    return sp.mean_curvature * sp.mean_curvature * sp.area_element;
  });

  const auto km = [&](double u) { return surface.at(u).kappa_meridian; };
  const auto kp = [&](double u) { return surface.at(u).kappa_parallel; };
  sc.kappa_minus = std::min(scan_extremum(km, false), scan_extremum(kp, false));
  sc.kappa_plus = std::max(scan_extremum(km, true), scan_extremum(kp, true));

  const auto two_h_minus_max = [&](double u) {
    const SurfacePoint sp = surface.at(u);
    return 2.0 * sp.mean_curvature - std::max(sp.kappa_meridian, sp.kappa_parallel);
  };
  const auto two_h_minus_min = [&](double u) {
    const SurfacePoint sp = surface.at(u);
    return 2.0 * sp.mean_curvature - std::min(sp.kappa_meridian, sp.kappa_parallel);
  };
  sc.kappa_tilde_minus = scan_extremum(two_h_minus_max, false);
  sc.kappa_tilde_plus = scan_extremum(two_h_minus_min, true);

  sc.c_s = std::sqrt(sc.area / (16.0 * kPi));
  sc.c_k = std::sqrt((3.0 * sc.willmore - 2.0 * kPi * sc.euler_char) / (32.0 * kPi));
  sc.c_gamma = sc.c_k / sc.c_s;
  return sc;
}

double symbol_A(const SurfaceRev& surface, double u, double theta) {
  const SurfacePoint sp = surface.at(u);
  const double k1 = sp.kappa_meridian, k2 = sp.kappa_parallel;
  const double c = std::cos(theta), s = std::sin(theta);
  return k1 + k2 - (k1 * c * c + k2 * s * s);
}

std::vector<std::pair<double, double>> essential_range(const SurfaceRev& surface) {
  const int samples = 8192;
  std::vector<std::pair<double, double>> raw(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    const SurfacePoint sp = surface.at(kPi * i / samples);
    const double lo = 2.0 * sp.mean_curvature - std::max(sp.kappa_meridian, sp.kappa_parallel);
    const double hi = 2.0 * sp.mean_curvature - std::min(sp.kappa_meridian, sp.kappa_parallel);
    raw[i] = {lo, hi};
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : raw) {
    if (!merged.empty() && iv.first <= merged.back().second + 1e-12)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return merged;
}

WillmoreBoundReport willmore_inequality_check(const SurfaceRev& surface) {
  const ShapeConstants sc = shape_constants(surface);
  WillmoreBoundReport r{};
  r.kappa_minus = sc.kappa_minus;
  r.kappa_plus = sc.kappa_plus;
  r.mid = std::sqrt((3.0 * sc.willmore - 4.0 * kPi) / (2.0 * sc.area));
  const double slack = 1e-10 * (1.0 + std::abs(r.mid));
  r.holds = (r.kappa_minus <= r.mid + slack) && (r.mid <= r.kappa_plus + slack);
  return r;
}

}  // namespace nps
