// Command-line driver: steady, evolve-limit, evolve-eps, sweep, dissipation.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "thinwall/eps_solver.hpp"
#include "thinwall/errors.hpp"
#include "thinwall/harness.hpp"
#include "thinwall/limit_solver.hpp"

namespace fs = std::filesystem;
using namespace thinwall;

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
};

RunConfig resolve(const CommonArgs& args) {
  RunConfig cfg = args.config.empty() ? parse_config("") : load_config(args.config);
  if (!args.out.empty()) cfg.out_dir = args.out;
  fs::create_directories(cfg.out_dir);
  return cfg;
}

Trajectory<LimitState> limit_run(const RunConfig& cfg) {
  const PhysicalParams p = config_params(cfg);
  const LimitMesh m = config_limit_mesh(cfg, p);
  return evolve_limit(sample_limit(config_initial_data(cfg, p), m), cfg.dt, cfg.T, cfg.theta, p, m);
}

void cmd_steady(const RunConfig& cfg) {
  const SteadyStudy study = run_steady_study(cfg);
  write_steady_csv(study, fs::path(cfg.out_dir) / "steady.csv",
                   fs::path(cfg.out_dir) / "steady_refinement.csv");
  for (const auto& r : study.refinement)
    std::cout << r.name << " N=" << r.n << " max_diff=" << format_double(r.max_diff) << '\n';
}

void cmd_evolve_limit(const RunConfig& cfg) {
  const auto traj = limit_run(cfg);
  write_trajectory_csv(traj, fs::path(cfg.out_dir) / "trajectory_limit.csv", cfg.stride);
  std::cout << "E(0)=" << format_double(traj.energy.front())
            << " E(T)=" << format_double(traj.energy.back()) << '\n';
}

void cmd_evolve_eps(const RunConfig& cfg) {
  const PhysicalParams p = config_params(cfg);
  const InitialData data = config_initial_data(cfg, p);
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
    const EpsMesh m = config_eps_mesh(cfg, p, cfg.eps_list[i]);
    const auto traj = evolve_eps(lift_initial_data(data, m), cfg.dt, cfg.T, cfg.theta, p, m);
    const fs::path path = fs::path(cfg.out_dir) / ("trajectory_eps_" + std::to_string(i) + ".csv");
    write_trajectory_csv(traj, m, path, cfg.stride);
    std::cout << "eps=" << format_double(m.eps()) << " -> " << path.string() << '\n';
  }
}

void cmd_sweep(const RunConfig& cfg) {
  const SweepOutcome out = run_sweep_detailed(cfg);
  const fs::path dir(cfg.out_dir);
  write_report_csv(out.report, dir / "report.csv");
  write_trajectory_csv(out.limit, dir / "trajectory_limit.csv", cfg.stride);
  for (std::size_t i = 0; i < out.eps_runs.size(); ++i)
    write_trajectory_csv(out.eps_runs[i], out.eps_meshes[i],
                         dir / ("trajectory_eps_" + std::to_string(i) + ".csv"), cfg.stride);
  for (const auto& row : out.report.rows)
    std::cout << "eps=" << format_double(row.eps) << " g_sup_diff=" << format_double(row.g_sup_diff)
              << '\n';
}

void cmd_dissipation(const RunConfig& cfg) {
  const auto traj = limit_run(cfg);
  write_dissipation_csv(traj, fs::path(cfg.out_dir) / "dissipation.csv");
  double worst = 0;
  for (const double r : dissipation_residual(traj)) worst = std::max(worst, std::abs(r));
  std::cout << "max |residual|=" << format_double(worst) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat flow through a thin wall and its point-mass limit"};
  app.require_subcommand(1);

  CommonArgs args;
  struct Command {
    const char* name;
    const char* help;
    void (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"steady", "closed-form resolvent against the discrete steady solve", cmd_steady},
      {"evolve-limit", "evolve the point-mass system", cmd_evolve_limit},
      {"evolve-eps", "evolve the thin-wall system for every eps in eps_list", cmd_evolve_eps},
      {"sweep", "eps-sweep with weak-form pairing gaps", cmd_sweep},
      {"dissipation", "energy dissipation residuals of the point-mass system", cmd_dissipation},
  };
  void (*selected)(const RunConfig&) = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", args.config, "key = value configuration file");
    sub->add_option("--out", args.out, "output directory (overrides out_dir)");
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    selected(resolve(args));
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
