#ifndef NPS_JSON_IO_HPP
#define NPS_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "nps/geometry.hpp"

namespace nps {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Curve descriptor round trip: {"family": ..., "params": {...}, "scale": ...}.
nlohmann::json curve_descriptor(const Curve2D& curve);
Curve2D curve_from_json(const nlohmann::json& j);

/// Surface descriptor round trip: {"family": ..., "params": {...}}.
nlohmann::json surface_descriptor(const SurfaceRev& surface);
SurfaceRev surface_from_json(const nlohmann::json& j);

/// Canonical serialization: sorted keys (nlohmann default map), every
/// floating-point number printed with 17 significant digits, no locale
/// dependence. Identical trees produce identical bytes.
std::string canonical_dump(const nlohmann::json& j, int indent = 2);

/// Row-major CSV with 17 significant digits.
std::string matrix_to_csv(const Eigen::MatrixXd& m);
std::string vector_to_csv(const Eigen::VectorXd& v);

}  // namespace nps

#endif  // NPS_JSON_IO_HPP
