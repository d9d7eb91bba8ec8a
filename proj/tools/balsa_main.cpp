//! \file balsa_main.cpp
//  \brief Command-line driver: example runs, steady-state tables, and
//         convergence studies.

#include <CLI11.hpp>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "balsa/run/config.hpp"
#include "balsa/run/examples.hpp"

namespace {

std::vector<int> parse_mesh_list(const std::string& s) {
  std::vector<int> meshes;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) meshes.push_back(std::stoi(tok));
  }
  return meshes;
}

void print_metrics(const balsa::MetricsReport& m) {
  for (const auto& kv : m.values) std::printf("  %-24s %s\n", kv.first.c_str(), balsa::format_double(kv.second).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balsa: well-balanced A-WENO solvers for hyperbolic balance laws"};
  app.require_subcommand(1);

  balsa::RunConfig cfg;
  std::string config_path, mesh_list = "20,60,180";
  int example = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scheme", cfg.scheme, "scheme variant: 1, 2, 3 or A");
    cmd->add_option("--nx", cfg.nx, "cells in x (0: example default)");
    cmd->add_option("--ny", cfg.ny, "cells in y (0: same as nx)");
    cmd->add_option("--tfinal", cfg.t_final, "final time (negative: example default)");
    cmd->add_option("--cfl", cfg.cfl, "CFL number");
    cmd->add_option("--out", cfg.out_dir, "output directory");
  };

  auto* run = app.add_subcommand("run", "run a benchmark example or a config file");
  run->add_option("--example", example, "example id 1..8");
  run->add_option("--config", config_path, "config file (key = value lines)");
  add_common(run);

  auto* steady = app.add_subcommand("steady", "write the steady-state table of an example");
  steady->add_option("--example", example, "example id (1, 2, 4, 5 or 8)")->required();
  add_common(steady);

  auto* converge = app.add_subcommand("converge", "mesh-refinement order study");
  converge->add_option("--model", cfg.model, "advection or sw_smooth")->required();
  converge->add_option("--meshes", mesh_list, "comma-separated cell counts");
  converge->add_flag("--order-stub", cfg.first_order,
                     "first-order diagnostic configuration (harness sanity)");
  add_common(converge);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!config_path.empty()) {
        balsa::RunConfig file_cfg = balsa::parse_config_file(config_path);
        // Command-line values override file values where the user set them.
        if (example > 0) file_cfg.example = example;
        for (const auto* opt : run->get_options()) {
          if (opt->count() == 0) continue;
          const auto name = opt->get_name();
          if (name == "--scheme") file_cfg.scheme = cfg.scheme;
          else if (name == "--nx") file_cfg.nx = cfg.nx;
          else if (name == "--ny") file_cfg.ny = cfg.ny;
          else if (name == "--tfinal") file_cfg.t_final = cfg.t_final;
          else if (name == "--cfl") file_cfg.cfl = cfg.cfl;
          else if (name == "--out") file_cfg.out_dir = cfg.out_dir;
        }
        cfg = file_cfg;
      } else {
        cfg.example = example;
      }
      if (cfg.example == 0) throw balsa::config_error("run: need --example or a config file");
      if (cfg.first_order) cfg.corrections = false;
      const auto out = balsa::run_example(cfg.example, cfg);
      std::printf("example %d, scheme %s: %ld steps in %.2f s\n", cfg.example,
                  cfg.scheme.c_str(), out.steps, out.runtime_sec);
      print_metrics(out.metrics);
      if (!out.solution_path.empty()) std::printf("  solution: %s\n", out.solution_path.c_str());
      std::printf("  metrics:  %s\n", out.metrics_path.c_str());
    } else if (steady->parsed()) {
      cfg.example = example;
      const auto path = balsa::build_steady(example, cfg);
      std::printf("steady table: %s\n", path.c_str());
    } else if (converge->parsed()) {
      if (cfg.first_order) cfg.corrections = false;
      const auto meshes = parse_mesh_list(mesh_list);
      const auto rows = balsa::convergence_study(cfg, meshes);
      std::filesystem::create_directories(cfg.out_dir);
      balsa::CsvWriter csv(cfg.out_dir + "/convergence_" + cfg.model + ".csv");
      csv.header({"n", "error", "order"});
      std::printf("%8s %14s %8s\n", "n", "error", "order");
      for (const auto& r : rows) {
        csv.row({double(r.n), r.error, r.order});
        std::printf("%8d %14.6e %8.3f\n", r.n, r.error, r.order);
      }
    }
  } catch (const balsa::solver_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
