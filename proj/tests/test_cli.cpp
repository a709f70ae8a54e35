#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("nps_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("NPS_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "NPS_CLI_BIN must point at the CLI binary");
  static int counter = 0;
  const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
  const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = "\"" + std::string(bin) + "\" " + args + " > \"" + out.string() +
                          "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r{-1, slurp(out)};
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("zeta report carries provenance and is byte-stable") {
  const RunResult first = run_cli("zeta");
  REQUIRE(first.code == 0);
  const json j = json::parse(first.out);
  CHECK(j["schema"].get<int>() == 1);
  CHECK(j["tool_version"].get<std::string>() == "0.1.0");
  CHECK(j["results"]["zeta_S2_at_0"]["value"].get<double>() ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(j["results"]["zeta_S2_at_0"]["provenance"].get<std::string>() == "computed");
  CHECK(j["results"]["zeta_S2_at_0_reference"]["provenance"].get<std::string>() ==
        "paper_reference");

  const RunResult second = run_cli("zeta");
  REQUIRE(second.code == 0);
  CHECK(second.out == first.out);  // wall time goes to stderr, stdout is reproducible
}

TEST_CASE("spectrum on a circle reports the flat eigenvalue list") {
  const RunResult r = run_cli("spectrum --curve circle --r 0.25 --n 64");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["config"]["curve"]["family"].get<std::string>() == "circle");
  const auto values = j["results"]["eigenvalues"]["values"];
  REQUIRE(values.size() > 1);
  CHECK(values[0].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(values[1].get<double>()) <= 1e-10);
  CHECK(j["results"]["plemelj_residual"]["value"].get<double>() <= 1e-10);
}

TEST_CASE("check exits zero on the reference ellipse") {
  const RunResult r = run_cli("check --curve ellipse --a 1 --b 0.5 --n 128");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["results"]["all_passed"].get<bool>());
  for (const auto& c : j["results"]["checks"]) CHECK(c["passed"].get<bool>());
}

TEST_CASE("failures map to documented exit codes") {
  CHECK(run_cli("spectrum --curve circle --r -1 --n 32").code == 3);   // bad geometry
  CHECK(run_cli("spectrum --curve blob --n 32").code == 2);            // unknown family
  CHECK(run_cli("frobnicate").code == 2);                              // unknown subcommand
  CHECK(run_cli("--config /nonexistent.json zeta").code == 2);         // unreadable config
  CHECK(run_cli("calculus --curve circle --r 0.25 --n 32 --coeffs 1,zebra").code == 2);
}

TEST_CASE("config file values sit under explicit flags") {
  const fs::path cfg = scratch_dir() / "config.json";
  std::ofstream(cfg) << "{\"n\": 32, \"curve\": \"circle\", \"r\": 0.5}";
  const RunResult r = run_cli("spectrum --config \"" + cfg.string() + "\" --r 0.25");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["config"]["n"].get<int>() == 32);
  CHECK(j["config"]["curve"]["family"].get<std::string>() == "circle");
  CHECK(j["config"]["curve"]["r"].get<double>() == 0.25);  // flag wins over file
}

TEST_CASE("dirichlet accepts expression-style data and a points file") {
  const fs::path pts = scratch_dir() / "points.csv";
  std::ofstream(pts) << "0.1,0.0\n0.0,0.05\n";
  const RunResult r =
      run_cli("dirichlet --data \"x^2-y^2\" --n 128 --points \"" + pts.string() + "\"");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["results"]["points"].size() == 2);
  CHECK(j["results"]["values"]["values"][0].get<double>() ==
        doctest::Approx(0.01).epsilon(1e-6));
  CHECK(j["results"]["exact"]["provenance"].get<std::string>() == "oracle");
  CHECK(j["results"]["max_error"]["value"].get<double>() <= 1e-6);
}

TEST_CASE("counterexample with a custom weight list emits the kernel report") {
  const RunResult r = run_cli("counterexample --lambda 1,0.5,0.25");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["results"]["kernel_residual"]["value"].get<double>() <= 1e-13);
  CHECK(j["results"]["rank_nullity_holds"].get<bool>());
  CHECK(j["results"]["rescaled"].get<bool>());  // weights get unit square-sum
  CHECK(j["results"]["dim"]["value"].get<double>() == 4);  // 3 weights + the border row
  CHECK(run_cli("counterexample --lambda 0.5,1").code == 5);  // increasing weights rejected
}

TEST_CASE("every numeric leaf under results carries a provenance wrapper") {
  // recursive scan: a bare number anywhere below `results` is a contract break
  std::function<void(const json&, const std::string&)> scan =
      [&](const json& node, const std::string& path) {
        if (node.is_object()) {
          if (node.contains("provenance")) return;  // wrapped leaf group
          for (const auto& [k, v] : node.items()) scan(v, path + "." + k);
        } else if (node.is_array()) {
          for (size_t i = 0; i < node.size(); ++i)
            scan(node[i], path + "[" + std::to_string(i) + "]");
        } else if (node.is_number()) {
          FAIL_CHECK("unwrapped number at " << path);
        }
      };
  for (const std::string& args :
       {std::string("counterexample"), std::string("ratio --table sphere --count 10"),
        std::string("spectrum --curve circle --r 0.25 --n 32")}) {
    const RunResult r = run_cli(args);
    REQUIRE(r.code == 0);
    scan(json::parse(r.out)["results"], "results");
  }
}

TEST_CASE("csv format flattens results into key,value rows") {
  const RunResult r = run_cli("zeta --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("key,value\n", 0) == 0);
  CHECK(r.out.find("zeta_S2_at_0.value,") != std::string::npos);
}

TEST_CASE("--out writes the JSON report to a file") {
  const fs::path out = scratch_dir() / "report.json";
  const RunResult r = run_cli("zeta --out \"" + out.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const json j = json::parse(slurp(out));
  CHECK(std::abs(j["results"]["zeta_S2_at_1"]["value"].get<double>()) <= 1e-12);
}

TEST_CASE("matrix dumps land in the requested directory") {
  const fs::path dir = scratch_dir() / "dump";
  fs::create_directories(dir);
  const RunResult r =
      run_cli("spectrum --curve circle --r 0.25 --n 32 --dump-matrices \"" + dir.string() + "\"");
  REQUIRE(r.code == 0);
  for (const char* name : {"S.csv", "K.csv", "A.csv"}) {
    const fs::path p = dir / name;
    REQUIRE_MESSAGE(fs::exists(p), name);
    const std::string first_line = slurp(p).substr(0, slurp(p).find('\n'));
    CHECK(std::count(first_line.begin(), first_line.end(), ',') == 31);  // 32 columns
  }
}

}  // TEST_SUITE
