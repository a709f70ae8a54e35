// Command-line workbench around the boundary-operator library: assembles the
// layer operators on a chosen curve, runs the spectral machinery, and emits
// deterministic JSON/CSV reports (17-significant-digit numbers, sorted keys).
#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nps/asymptotics.hpp"
#include "nps/counterexample.hpp"
#include "nps/dirichlet.hpp"
#include "nps/errors.hpp"
#include "nps/geometry.hpp"
#include "nps/json_io.hpp"
#include "nps/nystrom.hpp"
#include "nps/symmetrizable.hpp"
#include "nps/zeta_eta.hpp"

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// exit codes (documented in README): 0 ok, 2 usage/config, 3 geometry,
// 4 positivity, 5 numeric, 6 failed check, 7 I/O
enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kGeometry = 3,
  kPositivity = 4,
  kNumeric = 5,
  kCheckFailed = 6,
  kIo = 7
};

struct Options {
  std::string subcommand;
  std::string curve = "ellipse";
  double r = 0.25, a = 1.0, b = 0.5, eps = 0.3;
  int star_k = 5;
  std::string surface = "sphere";
  double sr = 1.0, sa = 1.0, sc = 2.0;
  int n = 256;
  double plemelj_tol = 1e-9, kernel_tol = 1e-10, group_tol = 1e-8;
  std::uint64_t seed = 0;
  std::string out;        // JSON path ("" = stdout)
  std::string csv_out;    // CSV path ("" = none unless format requires)
  std::string format = "json";
  std::string dump_dir;   // --dump-matrices
  std::string coeffs = "0,0,1";
  std::string data = "harmonic";
  std::string points_path;   // CSV of x,y evaluation points ("" = built-in ring)
  std::string lambda_list;   // weights for a custom bordered example ("" = presets)
  std::string pert = "geometric";
  std::string table;      // "sphere" for the analytic ratio table
  int alpha_index = 1;
  int count = 30;
};

nps::Curve2D make_curve(const Options& o) {
  if (o.curve == "circle") return nps::Curve2D::circle(o.r);
  if (o.curve == "ellipse") return nps::Curve2D::ellipse(o.a, o.b);
  if (o.curve == "kite") return nps::Curve2D::kite();
  if (o.curve == "star") return nps::Curve2D::star(o.star_k, o.eps);
  throw nps::ConfigError("unknown curve family \"" + o.curve + "\" (use the config file for fourier curves)");
}

nps::SurfaceRev make_surface(const Options& o) {
  if (o.surface == "sphere") return nps::SurfaceRev::sphere(o.sr);
  if (o.surface == "spheroid") return nps::SurfaceRev::spheroid(o.sa, o.sc);
  throw nps::ConfigError("unknown surface family \"" + o.surface + "\"");
}

json num(double v, const char* provenance = "computed") {
  return json{{"provenance", provenance}, {"value", v}};
}

json num_list(const Eigen::VectorXd& v, const char* provenance = "computed") {
  return json{{"provenance", provenance},
              {"values", std::vector<double>(v.begin(), v.end())}};
}

json config_echo(const Options& o) {
  json c{{"subcommand", o.subcommand}, {"n", o.n},
         {"seed", o.seed},            {"plemelj_tol", o.plemelj_tol},
         {"kernel_tol", o.kernel_tol}, {"group_tol", o.group_tol},
         {"format", o.format}};
  if (o.subcommand == "geometry" || o.subcommand == "zeta")
    c["surface"] = json{{"family", o.surface}, {"r", o.sr}, {"a", o.sa}, {"c", o.sc}};
  c["curve"] = json{{"family", o.curve}, {"r", o.r}, {"a", o.a},
                    {"b", o.b},          {"k", o.star_k}, {"eps", o.eps}};
  return c;
}

Eigen::VectorXd parse_coeffs(const std::string& s) {
  std::vector<double> c;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      c.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw nps::ConfigError("cannot parse numeric list entry \"" + item + "\"");
    }
  }
  if (c.empty()) throw nps::ConfigError("empty numeric list");
  return Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
}

// flattens {"a": {"value": x}, "b": {"values": [...]}} into key,value CSV rows
void flatten_csv(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten_csv(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
    out += prefix + "," + buf + "\n";
  } else if (j.is_boolean()) {
    out += prefix + "," + (j.get<bool>() ? "1" : "0") + "\n";
  }
}

void write_file_or_throw(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open " + path + " for writing");
  f << bytes;
  if (!f.good()) throw std::ios_base::failure("short write to " + path);
}

void ensure_dump_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::ios_base::failure("cannot create directory " + dir + ": " + ec.message());
}

nps::DiscretizedOperators assemble_for(const Options& o) {
  nps::AssembleOptions ao;
  ao.auto_rescale = true;
  return nps::assemble(make_curve(o), o.n, ao);
}

nps::FactorizeOptions factorize_opts(const Options& o) {
  nps::FactorizeOptions fo;
  fo.kernel_tol_rel = o.kernel_tol;
  fo.group_tol = o.group_tol;
  return fo;
}

json run_spectrum(const Options& o) {
  const nps::DiscretizedOperators ops = assemble_for(o);
  const nps::SpectralData sd =
      nps::factorize(nps::SymmetrizablePair::from_ops(ops, o.plemelj_tol * 1e3), factorize_opts(o));
  json r;
  r["scale_factor"] = num(ops.scale_factor);
  r["lambda_min_S"] = num(ops.lambda_min_S);
  r["plemelj_residual"] = num(ops.plemelj_residual);
  r["factorization_residual"] = num(ops.factorization_residual);
  r["eigenvalues"] = num_list(sd.lambda);
  r["s_eigenvalues"] = num_list(sd.s_eigs);
  r["n_retained"] = num(sd.n_retained);
  r["biorthogonality_residual"] = num(sd.biorthogonality_residual());
  r["a_norm"] = num(sd.a_norm);
  r["s_norm"] = num(sd.s_norm);
  if (!o.dump_dir.empty()) {
    ensure_dump_dir(o.dump_dir);
    write_file_or_throw(o.dump_dir + "/S.csv", nps::matrix_to_csv(ops.S));
    write_file_or_throw(o.dump_dir + "/K.csv", nps::matrix_to_csv(ops.K));
    write_file_or_throw(o.dump_dir + "/A.csv", nps::matrix_to_csv(ops.A));
  }
  return r;
}

json run_dirichlet(const Options& o) {
  const nps::DiscretizedOperators ops = assemble_for(o);
  Eigen::VectorXd f;
  bool have_exact = true;
  std::function<double(const Eigen::Vector2d&)> exact;
  if (o.data == "harmonic" || o.data == "x^2-y^2") {
    exact = [](const Eigen::Vector2d& x) { return x.x() * x.x() - x.y() * x.y(); };
    f = ops.grid.sample_xy(exact);
  } else if (o.data == "constant" || o.data == "1") {
    exact = [](const Eigen::Vector2d&) { return 1.0; };
    f = ops.grid.sample_xy(exact);
  } else if (o.data == "cos" || o.data == "cos(t)") {
    f = ops.grid.sample([](double t) { return std::cos(t); });
    have_exact = false;
  } else {
    throw nps::ConfigError("dirichlet: unknown --data \"" + o.data +
                           "\" (supported: harmonic|x^2-y^2, constant|1, cos|cos(t))");
  }
  const nps::HarmonicSolution sol = nps::solve_dirichlet(ops, f);

  std::vector<Eigen::Vector2d> pts;
  if (o.points_path.empty()) {
    for (int i = 0; i < 8; ++i) {
      const double t = 2.0 * kPi * i / 8.0;
      pts.push_back(0.5 * ops.grid.curve.at(t).position);
    }
  } else {
    std::ifstream pf(o.points_path);
    if (!pf) throw nps::ConfigError("dirichlet: cannot read --points file " + o.points_path);
    std::string line;
    while (std::getline(pf, line)) {
      if (line.empty()) continue;
      double x = 0.0, y = 0.0;
      char comma = 0;
      std::istringstream row(line);
      if (!(row >> x >> comma >> y) || comma != ',')
        throw nps::ConfigError("dirichlet: malformed --points row \"" + line + "\"");
      pts.emplace_back(x, y);
    }
    if (pts.empty()) throw nps::ConfigError("dirichlet: --points file has no rows");
  }

  json points = json::array();
  Eigen::VectorXd values(pts.size()), exact_values(pts.size());
  double max_err = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    points.push_back(json{{"x", num(pts[i].x())}, {"y", num(pts[i].y())}});
    values(static_cast<Eigen::Index>(i)) = sol.eval(pts[i]);
    if (have_exact) {
      exact_values(static_cast<Eigen::Index>(i)) = exact(pts[i]);
      max_err = std::max(max_err, std::abs(values(static_cast<Eigen::Index>(i)) -
                                           exact_values(static_cast<Eigen::Index>(i))));
    }
  }
  json r;
  r["path_agreement"] = num(sol.path_agreement);
  r["points"] = points;
  r["values"] = num_list(values);
  if (have_exact) {
    r["exact"] = num_list(exact_values, "oracle");
    r["max_error"] = num(max_err);
  }
  if (!o.dump_dir.empty()) {
    ensure_dump_dir(o.dump_dir);
    write_file_or_throw(o.dump_dir + "/density.csv", nps::vector_to_csv(sol.density));
  }
  return r;
}

json run_resolvent(const Options& o) {
  const nps::DiscretizedOperators ops = assemble_for(o);
  const nps::SpectralData sd =
      nps::factorize(nps::SymmetrizablePair::from_ops(ops, o.plemelj_tol * 1e3), factorize_opts(o));
  const int j = o.alpha_index;
  if (j < 0 || j >= sd.n_retained)
    throw nps::ConfigError("resolvent: --alpha-index out of the retained range");

  const double limit = nps::growth_radius_limit(sd, j);
  const std::vector<double> radii{0.5 * limit, 0.25 * limit, 0.1 * limit, 0.05 * limit};
  const auto rows = nps::resolvent_growth_check(sd, j, radii);

  json table = json::array();
  bool all_hold = true;
  for (const auto& row : rows) {
    table.push_back(json{{"radius", num(row.radius)},
                         {"norm", num(row.norm)},
                         {"lower", num(row.lower)},
                         {"upper", num(row.upper)},
                         {"holds", row.holds}});
    all_hold = all_hold && row.holds;
  }

  const Eigen::VectorXd fprobe = ops.grid.sample([](double t) { return std::cos(t); });
  const Eigen::VectorXd gprobe = ops.grid.sample([](double t) { return std::sin(2.0 * t); });
  const nps::ResolventReport rep = nps::resolvent_apply(sd, 2.0, fprobe, gprobe);

  json r;
  r["alpha"] = num(sd.lambda(j));
  r["radius_limit"] = num(limit);
  r["growth_table"] = table;
  r["growth_all_hold"] = all_hold;
  r["series_vs_solve"] = num(rep.agreement);
  r["borel_lhs"] = num(rep.borel_lhs);
  r["borel_rhs"] = num(rep.borel_rhs);
  return r;
}

json run_calculus(const Options& o) {
  const nps::DiscretizedOperators ops = assemble_for(o);
  const nps::SpectralData sd =
      nps::factorize(nps::SymmetrizablePair::from_ops(ops, o.plemelj_tol * 1e3), factorize_opts(o));
  const Eigen::VectorXd coeffs = parse_coeffs(o.coeffs);
  const nps::CalculusReport rep = nps::functional_calculus(sd, nps::polynomial_c1(coeffs));
  const Eigen::MatrixXd direct = nps::polynomial_of_kstar(sd, coeffs);

  json r;
  r["coefficients"] = num_list(coeffs, "computed");
  r["op_norm"] = num(rep.op_norm);
  r["upper_bound"] = num(rep.upper_bound);
  r["lower_bound"] = num(rep.lower_bound);
  r["phi_c1_norm"] = num(rep.phi_c1_norm);
  r["polynomial_agreement"] =
      num(nps::spectral_norm(rep.op - direct) / std::max(1.0, nps::spectral_norm(direct)));
  r["bounds_hold"] =
      rep.lower_bound <= rep.op_norm * (1.0 + 1e-12) && rep.op_norm <= rep.upper_bound * (1.0 + 1e-12);
  return r;
}

json run_zeta() {
  json r;
  r["zeta_S2_at_0"] = num(nps::zeta_sphere(0.0));
  r["zeta_S2_at_0_reference"] = num(1.0 / 12.0, "paper_reference");
  r["zeta_S2_at_1"] = num(nps::zeta_sphere(1.0));
  r["zeta_S2_at_3"] = num(nps::zeta_sphere(3.0));
  r["zeta_S2_at_3_reference"] = num(kPi * kPi / 8.0, "paper_reference");
  r["residue_at_2"] = num(nps::zeta_sphere_residue_at_2());
  r["residue_at_2_reference"] = num(0.5, "paper_reference");

  const nps::HeatTraceFit fit = nps::heat_trace_residue();
  r["heat_fit"] = json{{"a_minus2", num(fit.a_m2)},
                       {"a_minus1", num(fit.a_m1)},
                       {"a_0", num(fit.a_0)},
                       {"fit_residual", num(fit.fit_residual)},
                       {"residue", num(fit.residue)},
                       {"residue_doubled_convention", num(fit.residue_paper_convention)}};

  const nps::SphereDeterminantReport det = nps::sphere_determinant();
  r["determinant"] = json{
      {"zeta_prime_0", num(det.zeta_prime_0)},
      {"glaisher", num(det.glaisher)},
      {"det", num(det.det)},
      {"closed_form_reference", num(det.closed_form, "paper_reference")},
      {"agrees_with_reference", std::abs(det.det - det.closed_form) <= 1e-8}};

  r["eta_sphere_at_1"] = num(nps::eta_sphere(1.0));
  r["zeta_prime_minus1"] = num(nps::riemann_zeta_prime_minus1());
  return r;
}

json run_geometry(const Options& o) {
  json r;
  const nps::SurfaceRev surf = make_surface(o);
  const nps::ShapeConstants sc = nps::shape_constants(surf);
  r["area"] = num(sc.area);
  r["willmore"] = num(sc.willmore);
  r["kappa_minus"] = num(sc.kappa_minus);
  r["kappa_plus"] = num(sc.kappa_plus);
  r["kappa_tilde_minus"] = num(sc.kappa_tilde_minus);
  r["kappa_tilde_plus"] = num(sc.kappa_tilde_plus);
  r["c_s"] = num(sc.c_s);
  r["c_k"] = num(sc.c_k);
  r["c_gamma"] = num(sc.c_gamma);
  const nps::WillmoreBoundReport wb = nps::willmore_inequality_check(surf);
  r["willmore_bound"] = json{{"kappa_minus", num(wb.kappa_minus)},
                             {"mid", num(wb.mid)},
                             {"kappa_plus", num(wb.kappa_plus)},
                             {"holds", wb.holds}};
  json ranges = json::array();
  for (const auto& iv : nps::essential_range(surf))
    ranges.push_back(json{{"lo", num(iv.first)}, {"hi", num(iv.second)}});
  r["essential_range"] = ranges;

  const nps::Curve2D curve = make_curve(o);
  const nps::RescaleResult rr = nps::rescale_for_positivity(curve);
  r["curve"] = json{{"diameter", num(curve.diameter())},
                    {"rescale_factor", num(rr.factor)}};
  return r;
}

json run_ratio(const Options& o) {
  json r;
  if (o.table == "sphere") {
    json rows = json::array();
    for (const auto& row : nps::sphere_ratio_table(o.count))
      rows.push_back(json{{"n", num(row.n, "oracle")},
                          {"sigma_k", num(row.sigma_k, "oracle")},
                          {"sigma_s", num(row.sigma_s, "oracle")},
                          {"ratio", num(row.ratio, "oracle")}});
    r["table"] = rows;
    r["sigma_sqrt_n_at_2000"] = num(nps::sphere_sigma_sqrt_n(2000), "oracle");
    r["sharp_constant_reference"] = num(0.5, "paper_reference");
  } else {
    const nps::DiscretizedOperators ops = assemble_for(o);
    json rows = json::array();
    for (const auto& row : nps::singular_ratio_table(ops.K, ops.S, o.count))
      rows.push_back(json{{"n", num(row.n)},
                          {"sigma_k", num(row.sigma_k)},
                          {"sigma_s", num(row.sigma_s)},
                          {"ratio", num(row.ratio)}});
    r["table"] = rows;
  }
  nps::BSpec spec = nps::BSpec::GeometricTail;
  if (o.pert == "zero") spec = nps::BSpec::Zero;
  else if (o.pert == "rank1") spec = nps::BSpec::RankOne;
  else if (o.pert != "geometric")
    throw nps::ConfigError("ratio: unknown --pert \"" + o.pert + "\"");
  const nps::PerturbReport rep = nps::perturbed_identity_ratio_check(400, spec, o.seed);
  r["perturbation"] = json{{"kind", o.pert},
                           {"max_tail_deviation", num(rep.max_tail_deviation)},
                           {"counting_ratio", num(rep.counting_ratio)}};
  return r;
}

json run_counterexample(const Options& o) {
  json r;
  if (!o.lambda_list.empty()) {
    // custom weight list: emit the kernel report for that single example
    const nps::KreinExample ex = nps::KreinExample::make(parse_coeffs(o.lambda_list));
    r["lambda"] = num_list(ex.lambda, "computed");
    r["dim"] = num(ex.dim());
    r["rescaled"] = ex.rescaled;
    r["kernel_residual"] = num(ex.kernel_residual());
    r["rank_nullity_holds"] = ex.rank_nullity_holds();
    r["ker_A"] = num_list(ex.ker_A());
    r["ker_C"] = num_list(ex.ker_C());
    r["ker_AS"] = num_list(ex.ker_AS());
    r["ker_SA"] = num_list(ex.ker_SA());
    return r;
  }
  json kernels = json::array();
  for (int count : {2, 3, 16}) {
    const nps::KreinExample ex = nps::KreinExample::geometric(count);
    kernels.push_back(json{{"weights", num(count)},
                           {"dim", num(ex.dim())},
                           {"kernel_residual", num(ex.kernel_residual())},
                           {"rank_nullity_holds", ex.rank_nullity_holds()}});
  }
  r["kernels"] = kernels;
  const std::vector<int> dims{4, 16, 64};
  const std::vector<double> norms = nps::krein_growth_norms(dims);
  json growth = json::array();
  for (size_t i = 0; i < dims.size(); ++i) {
    json row{{"dim", num(dims[i])}, {"ker_AS_norm", num(norms[i])}};
    if (i > 0) row["ratio"] = num(norms[i] / norms[i - 1]);
    growth.push_back(row);
  }
  r["growth"] = growth;
  return r;
}

json run_check(const Options& o, bool& ok) {
  json checks = json::array();
  const auto record = [&](const std::string& name, double residual, double tol) {
    const bool pass = residual <= tol;
    ok = ok && pass;
    checks.push_back(json{{"name", name},
                          {"residual", num(residual)},
                          {"tolerance", num(tol, "paper_reference")},
                          {"passed", pass}});
  };

  const nps::DiscretizedOperators ops = assemble_for(o);
  const double norms = ops.S.norm() * ops.K.norm();  // Frobenius overestimate, scale only
  record("plemelj_identity", ops.plemelj_residual,
         o.plemelj_tol * nps::spectral_norm(ops.S) * nps::spectral_norm(ops.K));
  record("factorization", ops.factorization_residual, o.plemelj_tol * norms);

  const nps::SpectralData sd =
      nps::factorize(nps::SymmetrizablePair::from_ops(ops, o.plemelj_tol * 1e3), factorize_opts(o));
  record("biorthogonality", sd.biorthogonality_residual(), 1e-10);
  record("eigen_residual_kstar", sd.eigen_residual_kstar(), 1e-10);

  const Eigen::MatrixXd Q = nps::slanted_projection(sd, sd.lambda(0));
  record("slanted_projection_idempotent", nps::spectral_norm(Q * Q - Q), 1e-10);

  const Eigen::VectorXd f = ops.grid.sample([](double t) { return std::cos(t); });
  const Eigen::VectorXd g = ops.grid.sample([](double t) { return std::sin(2.0 * t); });
  const nps::ResolventReport rr = nps::resolvent_apply(sd, 2.0, f, g);
  record("resolvent_series_vs_solve", rr.agreement, 1e-10);
  record("borel_bound", rr.borel_lhs <= rr.borel_rhs * (1.0 + 1e-12) ? 0.0 : 1.0, 0.5);

  record("fredholm_recursion", nps::fredholm_recursion_residual(sd.lambda, 2, 0.5), 1e-12);

  // complex-power semigroup on a positive diagonal model
  {
    const Eigen::VectorXd spec = nps::sphere_spectrum(10);
    const int m = static_cast<int>(spec.size());
    nps::SymmetrizablePair pair = nps::SymmetrizablePair::make(
        Eigen::MatrixXd::Identity(m, m), Eigen::MatrixXd(spec.asDiagonal()));
    const nps::SpectralData dsd = nps::factorize(pair);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) v(i) = 1.0 / (1.0 + i);
    const Eigen::VectorXcd w2 = nps::complex_power_apply(dsd, {1.7, 0.0}, v);
    const Eigen::VectorXcd w1 = nps::complex_power_apply(dsd, {1.5, 0.0}, w2.real()) +
                                std::complex<double>(0, 1) *
                                    nps::complex_power_apply(dsd, {1.5, 0.0}, w2.imag());
    const Eigen::VectorXcd w = nps::complex_power_apply(dsd, {3.2, 0.0}, v);
    record("complex_power_semigroup", (w1 - w).norm() / w.norm(), 1e-10);
  }

  const nps::JumpReport jr =
      nps::jump_check(ops.grid.curve, [](double t) { return std::cos(t); }, 0.7);
  record("jump_formulas", jr.max_residual(), 1e-6);

  const Eigen::MatrixXd dtn = nps::dtn_matrix(ops);
  Eigen::LLT<Eigen::MatrixXd> llt(ops.S);
  const double sinv_norm =
      nps::spectral_norm(llt.solve(Eigen::MatrixXd::Identity(ops.grid.n, ops.grid.n)));
  record("dtn_two_forms", nps::dtn_factor_residual(ops, dtn), o.plemelj_tol * sinv_norm);

  json r;
  r["checks"] = checks;
  r["all_passed"] = ok;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  // honor NPS_THREADS before any Eigen work
  if (const char* threads = std::getenv("NPS_THREADS")) {
    const int t = std::atoi(threads);
    if (t > 0) Eigen::setNbThreads(t);
  }

  CLI::App app{"boundary-operator spectral workbench"};
  app.require_subcommand(1);
  Options o;

  // pre-scan for --config so file values sit under explicit flags
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream cf(argv[i + 1]);
      if (!cf) {
        std::cerr << "error: cannot read config file " << argv[i + 1] << "\n";
        return kUsage;
      }
      try {
        json j = json::parse(cf);
        if (j.contains("curve")) o.curve = j["curve"].get<std::string>();
        if (j.contains("surface")) o.surface = j["surface"].get<std::string>();
        if (j.contains("n")) o.n = j["n"].get<int>();
        if (j.contains("r")) o.r = j["r"].get<double>();
        if (j.contains("a")) o.a = j["a"].get<double>();
        if (j.contains("b")) o.b = j["b"].get<double>();
        if (j.contains("k")) o.star_k = j["k"].get<int>();
        if (j.contains("eps")) o.eps = j["eps"].get<double>();
        if (j.contains("sr")) o.sr = j["sr"].get<double>();
        if (j.contains("sa")) o.sa = j["sa"].get<double>();
        if (j.contains("sc")) o.sc = j["sc"].get<double>();
        if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("plemelj_tol")) o.plemelj_tol = j["plemelj_tol"].get<double>();
        if (j.contains("kernel_tol")) o.kernel_tol = j["kernel_tol"].get<double>();
        if (j.contains("group_tol")) o.group_tol = j["group_tol"].get<double>();
        if (j.contains("format")) o.format = j["format"].get<std::string>();
        if (j.contains("coeffs")) o.coeffs = j["coeffs"].get<std::string>();
        if (j.contains("data")) o.data = j["data"].get<std::string>();
        if (j.contains("points")) o.points_path = j["points"].get<std::string>();
        if (j.contains("lambda")) o.lambda_list = j["lambda"].get<std::string>();
      } catch (const json::exception& e) {
        std::cerr << "error: malformed config file: " << e.what() << "\n";
        return kUsage;
      }
    }
  }

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--curve", o.curve, "curve family: circle|ellipse|kite|star");
    cmd->add_option("--r", o.r, "circle radius");
    cmd->add_option("--a", o.a, "ellipse semiaxis a");
    cmd->add_option("--b", o.b, "ellipse semiaxis b");
    cmd->add_option("--k", o.star_k, "star arm count");
    cmd->add_option("--eps", o.eps, "star amplitude");
    cmd->add_option("--n", o.n, "grid size (even, >= 8)");
    cmd->add_option("--seed", o.seed, "seed for randomized probes");
    cmd->add_option("--plemelj-tol", o.plemelj_tol, "symmetrizability tolerance");
    cmd->add_option("--kernel-tol", o.kernel_tol, "relative kernel threshold");
    cmd->add_option("--group-tol", o.group_tol, "eigenvalue grouping tolerance");
    cmd->add_option("--out", o.out, "JSON output path (default stdout)");
    cmd->add_option("--csv", o.csv_out, "CSV output path");
    cmd->add_option("--format", o.format, "json|csv|both");
    cmd->add_option("--dump-matrices", o.dump_dir, "directory for S/K/A CSV dumps");
    cmd->add_option("--config", config_path, "JSON config file (flags take precedence)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "assemble and factorize on a curve");
  add_common(spectrum);
  CLI::App* dirichlet = app.add_subcommand("dirichlet", "solve the Dirichlet problem");
  add_common(dirichlet);
  dirichlet->add_option("--data", o.data, "boundary data: harmonic|x^2-y^2, constant|1, cos|cos(t)");
  dirichlet->add_option("--points", o.points_path, "CSV file of x,y evaluation points");
  CLI::App* resolvent = app.add_subcommand("resolvent", "resolvent norms and growth bounds");
  add_common(resolvent);
  resolvent->add_option("--alpha-index", o.alpha_index, "eigenvalue index for the growth window");
  CLI::App* calculus = app.add_subcommand("calculus", "polynomial functional calculus");
  add_common(calculus);
  calculus->add_option("--coeffs", o.coeffs, "polynomial coefficients c0,c1,...");
  CLI::App* zeta = app.add_subcommand("zeta", "sphere zeta/eta/determinant suite");
  add_common(zeta);
  CLI::App* geometry = app.add_subcommand("geometry", "surface constants and curve data");
  add_common(geometry);
  geometry->add_option("--surface", o.surface, "surface family: sphere|spheroid");
  geometry->add_option("--sr", o.sr, "sphere radius");
  geometry->add_option("--sa", o.sa, "spheroid equatorial radius");
  geometry->add_option("--sc", o.sc, "spheroid polar radius");
  CLI::App* ratio = app.add_subcommand("ratio", "singular-value ratio tables");
  add_common(ratio);
  ratio->add_option("--table", o.table, "\"sphere\" for the analytic table");
  ratio->add_option("--count", o.count, "table length");
  ratio->add_option("--pert", o.pert, "perturbation kind: zero|rank1|geometric");
  CLI::App* counterexample =
      app.add_subcommand("counterexample", "bordered-matrix kernel family");
  add_common(counterexample);
  counterexample->add_option("--lambda", o.lambda_list,
                             "comma-separated positive weights for a custom example");
  CLI::App* check = app.add_subcommand("check", "full invariant suite (nonzero exit on failure)");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  json results;
  bool check_ok = true;
  int rc = kOk;
  try {
    if (spectrum->parsed()) o.subcommand = "spectrum", results = run_spectrum(o);
    else if (dirichlet->parsed()) o.subcommand = "dirichlet", results = run_dirichlet(o);
    else if (resolvent->parsed()) o.subcommand = "resolvent", results = run_resolvent(o);
    else if (calculus->parsed()) o.subcommand = "calculus", results = run_calculus(o);
    else if (zeta->parsed()) o.subcommand = "zeta", results = run_zeta();
    else if (geometry->parsed()) o.subcommand = "geometry", results = run_geometry(o);
    else if (ratio->parsed()) o.subcommand = "ratio", results = run_ratio(o);
    else if (counterexample->parsed()) o.subcommand = "counterexample", results = run_counterexample(o);
    else if (check->parsed()) {
      o.subcommand = "check";
      results = run_check(o, check_ok);
      if (!check_ok) rc = kCheckFailed;
    }
  } catch (const nps::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const nps::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kGeometry;
  } catch (const nps::PositivityError& e) {
    std::cerr << "positivity error: " << e.what() << "\n";
    return kPositivity;
  } catch (const nps::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  }

  json report;
  report["schema"] = nps::kReportSchema;
  report["tool_version"] = nps::kToolVersion;
  report["config"] = config_echo(o);
  report["results"] = results;

  const std::string bytes = nps::canonical_dump(report);
  try {
    if (o.format == "json" || o.format == "both") {
      if (o.out.empty())
        std::cout << bytes;
      else
        write_file_or_throw(o.out, bytes);
    }
    if (o.format == "csv" || o.format == "both") {
      std::string csv = "key,value\n";
      flatten_csv(results, "", csv);
      if (o.csv_out.empty())
        std::cout << csv;
      else
        write_file_or_throw(o.csv_out, csv);
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  }

  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;
  std::cerr << "wall_time_seconds: " << wall.count() << "\n";
  return rc;
}
