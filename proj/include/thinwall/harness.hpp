#pragma once

// Run configuration, ε-sweep orchestration and CSV output.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thinwall/core.hpp"
#include "thinwall/diagnostics.hpp"
#include "thinwall/initial_data.hpp"
#include "thinwall/system.hpp"

namespace thinwall {

struct RunConfig {
  RawParams params;  // unit parameters
  Index n1{128};
  Index n2{128};
  Index nw{8};
  std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
  double dt{1e-3};
  double T{0.5};
  double theta{1.0};
  std::string preset{"sine-antisym"};
  double amplitude{1.0};
  std::string out_dir{"."};
  Index stride{1};
};

/// Flat `key = value` document, one assignment per line, `#` starts a
/// comment. Missing keys keep their defaults; eps_list is a comma-separated
/// list, optionally wrapped in braces.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Cross-field checks (eps_list ordering and range, T ≥ dt, theta, preset).
void validate_config(const RunConfig& cfg);

struct EpsRow {
  double eps{0};
  std::vector<PairingReport> pairings;  ///< ε-side report per test function
  std::vector<GapRecord> gaps;          ///< per test function
  double g_sup_diff{0};                 ///< sup_t |g_ε(t) − z(t)|
  double h0_norm{0};                    ///< ‖y⁰_ε‖_{H_ε}
  double w0_seminorm{0};                ///< ‖y⁰_ε‖_{W_ε}
  double wall_average_offset{0};        ///< |(1/2ε)∫ z⁰_ε − z⁰|
};

struct ConvergenceReport {
  std::vector<double> eps;  ///< strictly decreasing
  std::vector<EpsRow> rows;
  std::vector<PairingReport> limit_pairings;
  double limit_h0_norm{0};
  double limit_w0_seminorm{0};
};

/// Everything computed by a sweep; run_sweep keeps only the report.
struct SweepOutcome {
  PhysicalParams params;
  LimitMesh limit_mesh;
  Trajectory<LimitState> limit;
  std::vector<EpsMesh> eps_meshes;
  std::vector<Trajectory<EpsState>> eps_runs;
  ConvergenceReport report;
};

SweepOutcome run_sweep_detailed(const RunConfig& cfg);
ConvergenceReport run_sweep(const RunConfig& cfg);

/// Limit-problem pieces shared by the CLI subcommands.
PhysicalParams config_params(const RunConfig& cfg);
LimitMesh config_limit_mesh(const RunConfig& cfg, const PhysicalParams& p);
EpsMesh config_eps_mesh(const RunConfig& cfg, const PhysicalParams& p, double eps);
InitialData config_initial_data(const RunConfig& cfg, const PhysicalParams& p);

// ---------------------------------------------------------------------------
// Steady study: closed form against the discrete resolvent.

struct SteadyCase {
  std::string name;  ///< "point_source" (0,0,1) or "rod1_source" (1,0,0)
  VectorXd x;
  VectorXd closed_form;
  VectorXd discrete;
};

struct SteadyRefinementRow {
  std::string name;
  Index n{0};
  double max_diff{0};  ///< max-norm |discrete − closed form|
};

struct SteadyStudy {
  std::vector<SteadyCase> cases;
  std::vector<SteadyRefinementRow> refinement;
};

SteadyStudy run_steady_study(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// CSV

/// 17 significant digits, '.' separator, locale independent.
std::string format_double(double value);
double parse_double(std::string_view text);

void write_report_csv(const ConvergenceReport& report, const std::filesystem::path& path);
void write_trajectory_csv(const Trajectory<LimitState>& traj, const std::filesystem::path& path,
                          Index stride = 1);
void write_trajectory_csv(const Trajectory<EpsState>& traj, const EpsMesh& m,
                          const std::filesystem::path& path, Index stride = 1);
void write_steady_csv(const SteadyStudy& study, const std::filesystem::path& cases_path,
                      const std::filesystem::path& refinement_path);
void write_dissipation_csv(const Trajectory<LimitState>& traj, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace thinwall
