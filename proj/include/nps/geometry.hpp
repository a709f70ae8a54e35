#ifndef NPS_GEOMETRY_HPP
#define NPS_GEOMETRY_HPP

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nps/errors.hpp"

namespace nps {

/// Pointwise data of a smooth closed plane curve at parameter t in [0, 2pi).
struct CurvePoint {
  Eigen::Vector2d position;
  Eigen::Vector2d tangent;   // unit, in the direction of increasing t
  Eigen::Vector2d normal;    // unit outward (curve traversed counterclockwise)
  double curvature = 0.0;    // signed; positive for a convex counterclockwise curve
  double speed = 0.0;        // |x'(t)|
};

/// Smooth closed plane curve given by an analytic 2pi-periodic parametrization.
///
/// Families: circle(r), ellipse(a,b), kite, star(k,eps), fourier(radial
/// trigonometric polynomial). A multiplicative scale factor is carried so the
/// same shape can be shrunk for single-layer positivity without changing the
/// descriptor.
class Curve2D {
 public:
  static Curve2D circle(double r);
  static Curve2D ellipse(double a, double b);
  static Curve2D kite();
  static Curve2D star(int k, double eps);
  /// Radial curve r(t) = cos_coef[0] + sum_m (cos_coef[m] cos mt + sin_coef[m-1] sin mt).
  static Curve2D fourier(Eigen::VectorXd cos_coef, Eigen::VectorXd sin_coef);

  CurvePoint at(double t) const;

  /// Same shape scaled by `factor` about the origin.
  Curve2D scaled(double factor) const;
  double scale() const { return scale_; }
  const std::string& family() const { return family_; }

  /// Max pairwise distance over a dense parameter sample.
  double diameter(int samples = 1024) const;

  // Raw family parameters (used by descriptor serialization).
  double param_a = 0.0, param_b = 0.0, param_eps = 0.0;
  int param_k = 0;
  Eigen::VectorXd cos_coef, sin_coef;

 private:
  Curve2D(std::string family, double scale) : family_(std::move(family)), scale_(scale) {}
  // Unscaled position and first two derivatives at t.
  void eval(double t, Eigen::Vector2d& p, Eigen::Vector2d& dp, Eigen::Vector2d& ddp) const;

  std::string family_;
  double scale_ = 1.0;
};

/// Scaled copy with diameter <= 1/2 (sufficient for log-kernel positivity)
/// plus the factor applied. Returns factor 1 when already small enough.
struct RescaleResult {
  Curve2D curve;
  double factor;
};
RescaleResult rescale_for_positivity(const Curve2D& curve);

/// Pointwise data of a genus-0 surface of revolution at profile parameter
/// u in [0, pi] (u = 0 north pole, u = pi south pole).
struct SurfacePoint {
  double rho = 0.0;              // distance to the axis
  double z = 0.0;                // height
  double kappa_meridian = 0.0;   // principal curvature along the profile
  double kappa_parallel = 0.0;   // principal curvature along the circle of latitude
  double mean_curvature = 0.0;   // H = (k1 + k2)/2, outward convention (sphere: 1/r)
  double area_element = 0.0;     // dA/du = 2 pi rho sqrt(rho'^2 + z'^2)
};

/// Smooth closed genus-0 surface of revolution.
///
/// Families: sphere(r), spheroid(a,c) (equatorial radius a, polar radius c),
/// perturbed_sphere with radial profile r(u) = 1 + sum_m eps[m-1] cos(m u).
class SurfaceRev {
 public:
  static SurfaceRev sphere(double r);
  static SurfaceRev spheroid(double a, double c);
  static SurfaceRev perturbed_sphere(Eigen::VectorXd eps);

  SurfacePoint at(double u) const;
  const std::string& family() const { return family_; }

  double param_a = 0.0, param_c = 0.0;
  Eigen::VectorXd eps_coef;

 private:
  explicit SurfaceRev(std::string family) : family_(std::move(family)) {}
  // Profile (rho, z) and derivatives in u.
  void eval(double u, double& rho, double& z, double& drho, double& dz,
            double& ddrho, double& ddz) const;
  std::string family_;
};

/// Area, Willmore energy and the curvature/ratio constants of a surface.
struct ShapeConstants {
  double area = 0.0;
  double willmore = 0.0;          // W = int H^2 dA
  int euler_char = 2;
  double kappa_minus = 0.0;       // global min principal curvature
  double kappa_plus = 0.0;        // global max principal curvature
  double kappa_tilde_minus = 0.0; // min over x of (2H - kappa_plus(x))
  double kappa_tilde_plus = 0.0;  // max over x of (2H - kappa_minus(x))
  double c_s = 0.0;               // sqrt(area / 16 pi)
  double c_k = 0.0;               // sqrt((3W - 2 pi chi) / 32 pi)
  double c_gamma = 0.0;           // c_k / c_s
};

/// Computes ShapeConstants with adaptive Gauss-Legendre quadrature on the
/// profile (order doubling until |delta| <= 1e-12) and curvature extrema by
/// dense scan plus local refinement.
ShapeConstants shape_constants(const SurfaceRev& surface);

/// Principal symbol of the factor operator at surface parameter u and
/// cotangent direction theta (measured from the meridian direction):
///   sigma_0(A)(u, theta) = k1 + k2 - (k1 cos^2 theta + k2 sin^2 theta).
double symbol_A(const SurfaceRev& surface, double u, double theta);

/// Union over the surface of the symbol ranges [2H - kappa_plus, 2H - kappa_minus],
/// returned as disjoint closed intervals sorted by left endpoint.
std::vector<std::pair<double, double>> essential_range(const SurfaceRev& surface);

/// Two-sided curvature bound on sqrt((3W - 4 pi)/(2 area)):
/// kappa_minus <= mid <= kappa_plus for genus-0 surfaces.
struct WillmoreBoundReport {
  double kappa_minus, mid, kappa_plus;
  bool holds;
};
WillmoreBoundReport willmore_inequality_check(const SurfaceRev& surface);

}  // namespace nps

#endif  // NPS_GEOMETRY_HPP
