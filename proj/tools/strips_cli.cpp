// Command-line front end: wires geometry configs to the solvers and writes
// CSV/JSON/mesh artifacts.
//
// Exit codes: 0 success, 1 usage or config error, 2 hypothesis violation,
// 3 solver non-convergence.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "strips/assemble.hpp"
#include "strips/config.hpp"
#include "strips/eigensolver.hpp"
#include "strips/errors.hpp"
#include "strips/frenet.hpp"
#include "strips/grid.hpp"
#include "strips/hardy.hpp"
#include "strips/transverse.hpp"
#include "strips/trial.hpp"

namespace {

constexpr int kSchemaVersion = 1;

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw strips::config_error("cannot open output file \"" + path + "\"");
  out << content;
}

void emit_json(const std::string& path, nlohmann::ordered_json j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::ordered_json json_header(const std::string& command,
                                   const strips::GeometryConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["geometry"] = cfg.geometry.to_json();
  if (cfg.envelope) j["eps0"] = cfg.envelope->eps0;
  return j;
}

struct CommonOpts {
  std::string config_path;
  std::string out = "-";
  unsigned seed = 42;
  std::vector<int> grid = {600, 60};
  double truncate = 12.0;
  int trials = 100;
  int transverse_n = 2048;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_grid) {
  cmd->add_option("config", o.config_path, "geometry JSON file")->required();
  cmd->add_option("--out", o.out, "output path ('-' for stdout)");
  cmd->add_option("--seed", o.seed, "random seed");
  if (with_grid) {
    cmd->add_option("--grid", o.grid, "interior node counts n_s n_t")
        ->expected(2);
    cmd->add_option("--truncate", o.truncate, "longitudinal half-length L");
  }
  cmd->add_option("--tn", o.transverse_n, "transverse grid size for the gap solver");
}

int run_lambda(const CommonOpts& o, int samples) {
  const auto cfg = strips::load_geometry_config(o.config_path);
  const auto rows = strips::lambda_profile(cfg.geometry, -o.truncate, o.truncate,
                                           samples, o.transverse_n);
  std::ostringstream os;
  strips::write_profile_csv(os, rows);
  write_text(o.out, os.str());
  return 0;
}

int run_certificate(const CommonOpts& o) {
  const auto cfg = strips::load_geometry_config(o.config_path);
  strips::CertificateSearch search;
  search.transverse_n = o.transverse_n;
  const auto cert = strips::build_certificate(cfg.geometry, search);

  auto j = json_header("certificate", cfg);
  j["certificate"] = cert.to_json();
  emit_json(o.out, std::move(j));
  return 0;
}

int run_spectrum(const CommonOpts& o, const std::string& metric_name,
                 const std::string& dump_ops) {
  const auto cfg = strips::load_geometry_config(o.config_path);
  const strips::Grid2D grid(o.truncate, cfg.geometry.half_width(), o.grid[0],
                            o.grid[1]);
  const auto metric = metric_name == "geodesic" ? strips::MetricKind::kGeodesic
                                                : strips::MetricKind::kFull;
  const auto A = strips::assemble_stiffness(cfg.geometry, grid, metric);
  const auto weight = metric == strips::MetricKind::kFull
                          ? strips::MassWeight::h()
                          : strips::MassWeight::h0();
  const auto B = strips::assemble_mass(cfg.geometry, grid, weight);

  if (!dump_ops.empty()) {
    std::ostringstream sa, sb;
    A.write_coordinate(sa);
    B.write_coordinate(sb);
    write_text(dump_ops + ".stiffness.txt", sa.str());
    write_text(dump_ops + ".mass.txt", sb.str());
  }

  strips::EigOptions eig;
  eig.tol = 1e-7;
  eig.max_iter = 5000;
  eig.seed = o.seed;
  const auto res = strips::smallest_eig(A, B, eig);

  const double E1 = strips::first_mode_energy(cfg.geometry.half_width());
  const double flag_tol = 1e-3;

  auto j = json_header("spectrum", cfg);
  j["grid"] = {{"L", o.truncate}, {"n_s", o.grid[0]}, {"n_t", o.grid[1]}};
  j["metric"] = metric_name;
  j["E1"] = E1;
  j["mu1"] = res.value;
  j["gap"] = res.value - E1;
  j["classification"] = res.value < E1 - flag_tol ? "bound_state" : "stable";
  j["solver"] = {{"residual", res.residual},
                 {"iterations", res.iterations},
                 {"degenerate", res.degenerate},
                 {"seed", o.seed}};
  emit_json(o.out, std::move(j));
  return 0;
}

std::vector<strips::Trial1D> make_1d_trials(std::mt19937_64& rng, int count) {
  std::vector<strips::Trial1D> trials;
  trials.push_back(strips::Trial1D::odd_gaussian(1.0, 0.0, 1.0));
  trials.push_back(strips::Trial1D::half_line_bump());
  for (double r : {2.0, 1.6, 1.3, 1.15, 1.08}) {
    trials.push_back(strips::Trial1D::sharpened_sqrt_spline(r));
  }
  auto urand = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  while (static_cast<int>(trials.size()) < count) {
    const double alpha = urand(0.2, 5.0);
    const double A = urand(0.1, 10.0);
    const double B = urand(-0.5, 0.5) * alpha;
    trials.push_back(strips::Trial1D::odd_gaussian(A, B, alpha));
  }
  return trials;
}

int run_verify(const CommonOpts& o, const std::string& which,
               const std::string& csv_path) {
  const auto cfg = strips::load_geometry_config(o.config_path);
  std::mt19937_64 rng(o.seed);

  strips::VerifyOptions vopt;
  vopt.transverse_n = o.transverse_n;

  strips::InequalityReport report;
  if (which == "one") {
    report = strips::verify_hardy_1d(make_1d_trials(rng, o.trials));
  } else {
    strips::TrialFunction::RandomParams params;
    params.a = cfg.geometry.half_width();
    if (which == "local") {
      params.s0 = 0.0;
      const auto trials = strips::random_trials(rng, o.trials, params);
      report = strips::verify_local_hardy(cfg.geometry, trials, vopt);
    } else {
      strips::CertificateSearch search;
      search.transverse_n = o.transverse_n;
      const auto cert = strips::build_certificate(cfg.geometry, search);
      params.s0 = cert.s0;
      const auto trials = strips::random_trials(rng, o.trials, params);
      if (which == "theorem1") {
        report = strips::verify_theorem1(cfg.geometry, cert, trials, vopt);
      } else if (which == "kinetic") {
        report = strips::verify_lemma_kinetic(cfg.geometry, cert, trials, vopt);
      } else {  // curved
        if (!cfg.envelope) {
          throw strips::config_error(
              "verify curved: the geometry config must provide eps0");
        }
        report = strips::verify_curved_hardy(cfg.geometry, *cfg.envelope, cert,
                                             trials, vopt);
      }
    }
  }

  auto j = json_header("verify", cfg);
  j["which"] = which;
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  j["report"] = report.to_json();
  emit_json(o.out, std::move(j));
  if (!csv_path.empty()) {
    std::ostringstream os;
    report.write_csv(os);
    write_text(csv_path, os.str());
  }
  return 0;
}

int run_stability(const CommonOpts& o) {
  const auto cfg = strips::load_geometry_config(o.config_path);
  strips::CertificateSearch search;
  search.transverse_n = o.transverse_n;
  const auto cert = strips::build_certificate(cfg.geometry, search);
  const auto report = strips::stability_threshold(cfg.geometry, cert);

  auto j = json_header("stability", cfg);
  j["report"] = report.to_json();
  emit_json(o.out, std::move(j));
  return 0;
}

int run_embed(const CommonOpts& o) {
  const auto cfg = strips::load_geometry_config(o.config_path);
  const strips::Grid2D grid(o.truncate, cfg.geometry.half_width(), o.grid[0],
                            o.grid[1]);
  std::vector<double> s_nodes(grid.n_s);
  for (int i = 0; i < grid.n_s; ++i) s_nodes[i] = grid.s(i);
  const auto frame = strips::integrate_frenet(cfg.geometry.kappa(),
                                              cfg.geometry.tau(), s_nodes);
  const auto mesh = strips::build_mesh(cfg.geometry, frame, grid);

  const std::string base = o.out == "-" ? "mesh" : o.out;
  {
    std::ofstream csv(base + ".csv", std::ios::binary);
    if (!csv) throw strips::config_error("cannot open \"" + base + ".csv\"");
    strips::write_mesh_csv(csv, mesh);
  }
  {
    std::ofstream obj(base + ".obj", std::ios::binary);
    if (!obj) throw strips::config_error("cannot open \"" + base + ".obj\"");
    strips::write_mesh_obj(obj, mesh);
  }
  std::cerr << "wrote " << base << ".csv and " << base << ".obj ("
            << mesh.vertices.size() << " vertices)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet strips on ruled surfaces: gap profiles, Hardy "
               "certificates, spectra, inequality checks, embeddings"};
  app.require_subcommand(1);

  CommonOpts lambda_opts;
  int lambda_samples = 201;
  auto* cmd_lambda = app.add_subcommand("lambda", "transverse gap profile as CSV");
  lambda_opts.truncate = 12.0;
  add_common(cmd_lambda, lambda_opts, false);
  cmd_lambda->add_option("--truncate", lambda_opts.truncate, "profile half-range");
  cmd_lambda->add_option("--samples", lambda_samples, "number of s-samples");

  CommonOpts cert_opts;
  auto* cmd_cert = app.add_subcommand("certificate", "Hardy certificate as JSON");
  add_common(cmd_cert, cert_opts, false);

  CommonOpts spec_opts;
  std::string metric_name = "full";
  std::string dump_ops;
  auto* cmd_spec = app.add_subcommand("spectrum", "smallest eigenvalue of the strip");
  add_common(cmd_spec, spec_opts, true);
  cmd_spec->add_option("--metric", metric_name, "full | geodesic")
      ->check(CLI::IsMember({"full", "geodesic"}));
  cmd_spec->add_option("--dump-ops", dump_ops,
                       "write the assembled pencil in coordinate text format "
                       "to <base>.stiffness.txt / <base>.mass.txt");

  CommonOpts verify_opts;
  std::string which;
  auto* cmd_verify = app.add_subcommand("verify", "inequality checks on analytic trials");
  add_common(cmd_verify, verify_opts, false);
  cmd_verify->add_option("--which", which, "one | local | theorem1 | kinetic | curved")
      ->required()
      ->check(CLI::IsMember({"one", "local", "theorem1", "kinetic", "curved"}));
  cmd_verify->add_option("--trials", verify_opts.trials, "number of random trials");
  std::string verify_csv;
  cmd_verify->add_option("--csv", verify_csv, "also write the per-trial summary as CSV");

  CommonOpts stab_opts;
  auto* cmd_stab = app.add_subcommand("stability", "envelope threshold report");
  add_common(cmd_stab, stab_opts, false);

  CommonOpts embed_opts;
  embed_opts.grid = {200, 24};
  embed_opts.truncate = 6.0;
  auto* cmd_embed = app.add_subcommand("embed", "surface mesh export");
  add_common(cmd_embed, embed_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cmd_lambda->parsed()) return run_lambda(lambda_opts, lambda_samples);
    if (cmd_cert->parsed()) return run_certificate(cert_opts);
    if (cmd_spec->parsed()) return run_spectrum(spec_opts, metric_name, dump_ops);
    if (cmd_verify->parsed()) return run_verify(verify_opts, which, verify_csv);
    if (cmd_stab->parsed()) return run_stability(stab_opts);
    if (cmd_embed->parsed()) return run_embed(embed_opts);
  } catch (const strips::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const strips::hypothesis_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const strips::solver_error& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.best_residual()
              << " after " << e.iterations() << " iterations)\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
