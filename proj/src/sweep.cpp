#include <cmath>
#include <future>
#include <sstream>

#include "thinwall/eps_solver.hpp"
#include "thinwall/errors.hpp"
#include "thinwall/harness.hpp"
#include "thinwall/limit_solver.hpp"
#include "thinwall/resolvent.hpp"

namespace thinwall {

PhysicalParams config_params(const RunConfig& cfg) { return validate_params(cfg.params); }

LimitMesh config_limit_mesh(const RunConfig& cfg, const PhysicalParams& p) {
  return LimitMesh(p, cfg.n1, cfg.n2);
}

EpsMesh config_eps_mesh(const RunConfig& cfg, const PhysicalParams& p, double eps) {
  return EpsMesh(p, eps, cfg.n1, cfg.nw, cfg.n2);
}

InitialData config_initial_data(const RunConfig& cfg, const PhysicalParams& p) {
  return make_preset(cfg.preset, cfg.amplitude, p);
}

namespace {

struct EpsRun {
  EpsMesh mesh;
  Trajectory<EpsState> traj;
  EpsRow row;
};

EpsRun run_one_eps(const RunConfig& cfg, const PhysicalParams& p, const InitialData& data,
                   const Trajectory<LimitState>& limit, const std::vector<PairingReport>& limit_pairings,
                   const std::vector<TestFunction>& tests, double eps) {
  EpsMesh m = config_eps_mesh(cfg, p, eps);
  const EpsState y0 = lift_initial_data(data, m);
  Trajectory<EpsState> traj = evolve_eps(y0, cfg.dt, cfg.T, cfg.theta, p, m);
  if (traj.times != limit.times) throw Error("eps and limit time grids differ");

  EpsRow row;
  row.eps = eps;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    row.pairings.push_back(weak_pairing_eps(traj, tests[i], p, m));
    row.gaps.push_back(pairing_gap(limit_pairings[i], row.pairings.back()));
  }
  for (std::size_t n = 0; n < traj.size(); ++n)
    row.g_sup_diff = std::max(row.g_sup_diff, std::abs(g_eps(traj.states[n], m) - limit.states[n].z()));
  row.h0_norm = std::sqrt(h_norm_sq_eps(y0, p, m));
  row.w0_seminorm = std::sqrt(w_seminorm_sq_eps(y0, p, m));
  row.wall_average_offset = std::abs(g_eps(y0, m) - data.z0);
  return {std::move(m), std::move(traj), std::move(row)};
}

}  // namespace

SweepOutcome run_sweep_detailed(const RunConfig& cfg) {
  validate_config(cfg);
  const PhysicalParams p = config_params(cfg);
  const LimitMesh lm = config_limit_mesh(cfg, p);
  const InitialData data = config_initial_data(cfg, p);
  const LimitState y0 = sample_limit(data, lm);
  Trajectory<LimitState> limit = evolve_limit(y0, cfg.dt, cfg.T, cfg.theta, p, lm);

  const std::vector<TestFunction> tests = builtin_test_functions(p, cfg.T);
  ConvergenceReport report;
  for (const auto& tf : tests) report.limit_pairings.push_back(weak_pairing_limit(limit, tf, p, lm));
  report.limit_h0_norm = std::sqrt(h_norm_sq_limit(y0, p, lm));
  report.limit_w0_seminorm = std::sqrt(w_seminorm_sq_limit(y0, p, lm));

  // Independent solves, one task per ε; merged in list order.
  std::vector<std::future<EpsRun>> futures;
  for (const double eps : cfg.eps_list) {
    futures.push_back(std::async(std::launch::async, [&, eps] {
      try {
        return run_one_eps(cfg, p, data, limit, report.limit_pairings, tests, eps);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "eps = " << format_double(eps) << ": " << e.what();
        throw Error(msg.str());
      }
    }));
  }

  std::vector<EpsMesh> meshes;
  std::vector<Trajectory<EpsState>> runs;
  for (auto& f : futures) {
    EpsRun r = f.get();
    report.eps.push_back(r.row.eps);
    report.rows.push_back(std::move(r.row));
    meshes.push_back(std::move(r.mesh));
    runs.push_back(std::move(r.traj));
  }
  return {p, lm, std::move(limit), std::move(meshes), std::move(runs), std::move(report)};
}

ConvergenceReport run_sweep(const RunConfig& cfg) { return run_sweep_detailed(cfg).report; }

SteadyStudy run_steady_study(const RunConfig& cfg) {
  validate_config(cfg);
  const PhysicalParams p = config_params(cfg);

  struct Rhs {
    const char* name;
    ResolventData data;
  };
  const Rhs cases[] = {
      {"point_source", {[](double) { return 0.0; }, [](double) { return 0.0; }, 1.0}},
      {"rod1_source", {[](double) { return 1.0; }, [](double) { return 0.0; }, 0.0}},
  };

  SteadyStudy study;
  const LimitMesh m = config_limit_mesh(cfg, p);
  const BandedSystem sys = assemble_limit_system(p, m);
  for (const auto& c : cases) {
    const HVector rhs = sample(c.data, m);
    study.cases.push_back({c.name, m.nodes(), steady_closed_form(rhs, p, m).nodes(),
                           solve_steady_discrete(sys, rhs, p, m).nodes()});
  }
  for (const Index n : {32, 64, 128, 256}) {
    const LimitMesh mr(p, n, n);
    const BandedSystem sr = assemble_limit_system(p, mr);
    for (const auto& c : cases) {
      const HVector rhs = sample(c.data, mr);
      const VectorXd diff =
          solve_steady_discrete(sr, rhs, p, mr).nodes() - steady_closed_form(rhs, p, mr).nodes();
      study.refinement.push_back({c.name, n, diff.lpNorm<Eigen::Infinity>()});
    }
  }
  return study;
}

}  // namespace thinwall
