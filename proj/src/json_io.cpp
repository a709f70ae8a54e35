#include "nps/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace nps {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_rec(const nlohmann::json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += nlohmann::json(it.key()).dump();  // key escaping
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();  // strings, integers, booleans, null
      return;
  }
}

}  // namespace

nlohmann::json curve_descriptor(const Curve2D& curve) {
  nlohmann::json params = nlohmann::json::object();
  const std::string& fam = curve.family();
  if (fam == "circle") {
    params["r"] = curve.param_a;
  } else if (fam == "ellipse") {
    params["a"] = curve.param_a;
    params["b"] = curve.param_b;
  } else if (fam == "star") {
    params["k"] = curve.param_k;
    params["eps"] = curve.param_eps;
  } else if (fam == "fourier") {
    params["cos"] = std::vector<double>(curve.cos_coef.begin(), curve.cos_coef.end());
    params["sin"] = std::vector<double>(curve.sin_coef.begin(), curve.sin_coef.end());
  }
  return {{"family", fam}, {"params", params}, {"scale", curve.scale()}};
}

Curve2D curve_from_json(const nlohmann::json& j) {
  if (!j.contains("family")) throw ConfigError("curve descriptor: missing \"family\"");
  const std::string fam = j.at("family").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  Curve2D curve = [&]() {
    try {
      if (fam == "circle") return Curve2D::circle(params.value("r", 1.0));
      if (fam == "ellipse") return Curve2D::ellipse(params.value("a", 1.0), params.value("b", 0.5));
      if (fam == "kite") return Curve2D::kite();
      if (fam == "star") return Curve2D::star(params.value("k", 5), params.value("eps", 0.3));
      if (fam == "fourier") {
        const auto cc = params.value("cos", std::vector<double>{1.0});
        const auto sc = params.value("sin", std::vector<double>{});
        return Curve2D::fourier(Eigen::Map<const Eigen::VectorXd>(cc.data(), cc.size()),
                                Eigen::Map<const Eigen::VectorXd>(sc.data(), sc.size()));
      }
      throw ConfigError("curve descriptor: unknown family \"" + fam + "\"");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("curve descriptor: ") + e.what());
    }
  }();
  const double scale = j.value("scale", 1.0);
  if (scale != 1.0) curve = curve.scaled(scale);
  return curve;
}

nlohmann::json surface_descriptor(const SurfaceRev& surface) {
  nlohmann::json params = nlohmann::json::object();
  const std::string& fam = surface.family();
  if (fam == "sphere") {
    params["r"] = surface.param_a;
  } else if (fam == "spheroid") {
    params["a"] = surface.param_a;
    params["c"] = surface.param_c;
  } else if (fam == "perturbed_sphere") {
    params["eps"] = std::vector<double>(surface.eps_coef.begin(), surface.eps_coef.end());
  }
  return {{"family", fam}, {"params", params}};
}

SurfaceRev surface_from_json(const nlohmann::json& j) {
  if (!j.contains("family")) throw ConfigError("surface descriptor: missing \"family\"");
  const std::string fam = j.at("family").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  try {
    if (fam == "sphere") return SurfaceRev::sphere(params.value("r", 1.0));
    if (fam == "spheroid")
      return SurfaceRev::spheroid(params.value("a", 1.0), params.value("c", 2.0));
    if (fam == "perturbed_sphere") {
      const auto eps = params.value("eps", std::vector<double>{0.05});
      return SurfaceRev::perturbed_sphere(Eigen::Map<const Eigen::VectorXd>(eps.data(), eps.size()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("surface descriptor: ") + e.what());
  }
  throw ConfigError("surface descriptor: unknown family \"" + fam + "\"");
}

std::string canonical_dump(const nlohmann::json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  out.reserve(static_cast<size_t>(m.size()) * 26);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index jc = 0; jc < m.cols(); ++jc) {
      if (jc) out += ",";
      out += format_double(m(i, jc));
    }
    out += "\n";
  }
  return out;
}

std::string vector_to_csv(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += format_double(v(i));
    out += "\n";
  }
  return out;
}

}  // namespace nps
