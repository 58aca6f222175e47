// End-to-end checks of the command-line tool: exit codes, output formats,
// determinism.  The binary path comes from the build system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "strips_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(STRIPS_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = status;
#else
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << body;
  return p;
}

const std::string kFlat = R"({
  "a": 0.5,
  "kappa": {"family": "constant", "params": {"value": 0}},
  "tau":   {"family": "constant", "params": {"value": 0}},
  "theta": {"family": "constant", "params": {"value": 0}}
})";

const std::string kTwist = R"({
  "a": 0.5,
  "kappa": {"family": "constant", "params": {"value": 0}},
  "tau":   {"family": "constant", "params": {"value": 1}},
  "theta": {"family": "constant", "params": {"value": 0}},
  "eps0": 0.002
})";

const std::string kBent = R"({
  "a": 0.5,
  "kappa": {"family": "gaussian_bump", "params": {"amplitude": 0.4, "center": 0, "width": 2}},
  "tau":   {"family": "constant", "params": {"value": 0}},
  "theta": {"family": "constant", "params": {"value": 0}}
})";

}  // namespace

TEST_CASE("gap profile of a flat strip is an all-zero column") {
  const auto cfg = write_config("flat.json", kFlat);
  const auto r = run_cli("lambda " + cfg.string() + " --samples 7 --tn 256");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "s,lambda,lambda_alt,discrepancy");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    std::getline(ls, cell, ',');
    CHECK(std::abs(std::stod(cell)) <= 1e-10);
  }
  CHECK(rows == 7);
}

TEST_CASE("gap profile of a twisted strip is positive") {
  const auto cfg = write_config("twist.json", kTwist);
  const auto r = run_cli("lambda " + cfg.string() + " --samples 3 --tn 512");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    std::getline(ls, cell, ',');
    CHECK(std::stod(cell) > 0.1);
  }
}

TEST_CASE("missing config file exits with a usage error") {
  const auto r = run_cli("lambda /nonexistent/missing.json");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("bad json exits with a usage error") {
  const auto cfg = write_config("broken.json", "{ not json");
  CHECK(run_cli("certificate " + cfg.string()).exit_code == 1);
  const auto cfg2 = write_config("incomplete.json", R"({"a": 0.5})");
  CHECK(run_cli("certificate " + cfg2.string()).exit_code == 1);
}

TEST_CASE("certificate of a flat strip is a hypothesis failure") {
  const auto cfg = write_config("flat.json", kFlat);
  const auto r = run_cli("certificate " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("hypothesis failed") != std::string::npos);
}

TEST_CASE("certificate of a twisted strip, deterministic output") {
  const auto cfg = write_config("twist.json", kTwist);
  const auto r1 = run_cli("certificate " + cfg.string() + " --tn 512");
  REQUIRE(r1.exit_code == 0);
  const auto j = nlohmann::json::parse(r1.out);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("certificate").at("c_bound").get<double>() > 0.0);

  const auto r2 = run_cli("certificate " + cfg.string() + " --tn 512");
  CHECK(r1.out == r2.out);  // byte-identical
}

TEST_CASE("spectrum classifications") {
  const auto flat_cfg = write_config("flat.json", kFlat);
  const auto r = run_cli("spectrum " + flat_cfg.string() +
                         " --grid 150 30 --truncate 5 --seed 42");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("classification") == "stable");
  CHECK(j.at("mu1").get<double>() ==
        doctest::Approx(9.9683).epsilon(2e-3));  // rectangle eigenvalue

  // determinism across runs with the same seed
  const auto r2 = run_cli("spectrum " + flat_cfg.string() +
                          " --grid 150 30 --truncate 5 --seed 42");
  CHECK(r.out == r2.out);
}

TEST_CASE("verify one-dimensional Hardy through the CLI") {
  const auto cfg = write_config("flat.json", kFlat);
  const auto r = run_cli("verify " + cfg.string() + " --which one --trials 30");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("report").at("pass") == true);
  CHECK(j.at("report").at("max_ratio").get<double>() <= 4.0 + 1e-8);
}

TEST_CASE("verify local Hardy through the CLI") {
  const auto cfg = write_config("twist.json", kTwist);
  const auto r = run_cli("verify " + cfg.string() +
                         " --which local --trials 10 --tn 512 --seed 7");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("report").at("pass") == true);
  CHECK(j.at("report").at("min_defect_rel").get<double>() >= -1e-8);
}

TEST_CASE("verify curved needs an envelope in the config") {
  const auto cfg = write_config("flat_noenv.json", kBent);
  const auto r = run_cli("verify " + cfg.string() + " --which curved --trials 5");
  CHECK(r.exit_code == 2);  // sigma == 0 fails before the envelope matters
  const auto cfg2 = write_config("twist_noenv.json", std::string(R"({
  "a": 0.5,
  "kappa": {"family": "constant", "params": {"value": 0}},
  "tau":   {"family": "constant", "params": {"value": 1}},
  "theta": {"family": "constant", "params": {"value": 0}}
})"));
  const auto r2 = run_cli("verify " + cfg2.string() +
                          " --which curved --trials 5 --tn 512");
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("eps0") != std::string::npos);
}

TEST_CASE("stability report through the CLI") {
  const auto cfg = write_config("twist.json", kTwist);
  const auto r = run_cli("stability " + cfg.string() + " --tn 512");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("report").at("eps0_max").get<double>() > 0.0);
  CHECK(j.at("report").at("w_min").get<double>() > 0.0);
}

TEST_CASE("mesh export writes both files") {
  const auto cfg = write_config("bent_mesh.json", std::string(R"({
  "a": 0.4,
  "kappa": {"family": "constant", "params": {"value": 1}},
  "tau":   {"family": "constant", "params": {"value": 0}},
  "theta": {"family": "constant", "params": {"value": 0}}
})"));
  const fs::path base = work_dir() / "mesh_out";
  const auto r = run_cli("embed " + cfg.string() + " --grid 32 12 --truncate 2 --out " +
                         base.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(base.string() + ".csv"));
  CHECK(fs::exists(base.string() + ".obj"));
  std::istringstream is(slurp(base.string() + ".csv"));
  std::string line;
  int rows = -1;  // header
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 32 * 12);
}

TEST_CASE("gap profile refuses an oversized twist") {
  const auto cfg = write_config("bigtwist.json", R"({
  "a": 1.0,
  "kappa": {"family": "constant", "params": {"value": 0}},
  "tau":   {"family": "constant", "params": {"value": 1.5}},
  "theta": {"family": "constant", "params": {"value": 0}}
})");
  const auto r = run_cli("lambda " + cfg.string() + " --samples 3 --tn 256");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("sqrt(2)") != std::string::npos);
}

TEST_CASE("verify writes an optional csv summary") {
  const auto cfg = write_config("flat.json", kFlat);
  const fs::path csv = work_dir() / "hardy1d.csv";
  const auto r = run_cli("verify " + cfg.string() + " --which one --trials 10 --csv " +
                         csv.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(csv));
  const auto body = slurp(csv);
  CHECK(body.rfind("trial,", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 11);  // header + 10 rows
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate x.json").exit_code == 1);
  const auto cfg = write_config("flat.json", kFlat);
  CHECK(run_cli("verify " + cfg.string() + " --which bogus").exit_code == 1);
}
