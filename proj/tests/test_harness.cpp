#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "test_support.hpp"
#include "thinwall/eps_solver.hpp"
#include "thinwall/errors.hpp"
#include "thinwall/harness.hpp"
#include "thinwall/limit_solver.hpp"

namespace fs = std::filesystem;
using namespace thinwall;
using namespace thinwall::testing;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "thinwall_test_harness" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(THINWALL_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

template <typename E, typename Fn>
E capture(Fn&& fn) {
  try {
    fn();
  } catch (const E& e) {
    return e;
  }
  FAIL("expected exception");
  throw std::logic_error("unreachable");
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.n1 = cfg.n2 = 32;
  cfg.nw = 4;
  cfg.dt = 5e-3;
  cfg.T = 0.1;
  return cfg;
}

}  // namespace

TEST_CASE("empty document gives the defaults") {
  const RunConfig cfg = parse_config("");
  const RunConfig def;
  CHECK(cfg.params.c1 == 1.0);
  CHECK(cfg.params.L2 == 1.0);
  CHECK(cfg.n1 == 128);
  CHECK(cfg.n2 == 128);
  CHECK(cfg.nw == 8);
  CHECK(cfg.theta == 1.0);
  CHECK(cfg.dt == 1e-3);
  CHECK(cfg.T == 0.5);
  CHECK(cfg.eps_list == def.eps_list);
  CHECK(cfg.preset == "sine-antisym");
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("parsing a full document") {
  const RunConfig cfg = parse_config(
      "# comment line\n"
      "c1 = 2.5   # trailing comment\n"
      "  k = 0.125\n"
      "\n"
      "L2=1.75\n"
      "N1 = 40\n"
      "Nw = 6\n"
      "eps_list = {0.3, 0.2,0.1}\n"
      "theta = 0.5\n"
      "preset = bump\n"
      "amplitude = -2\n"
      "out_dir = some/where\n"
      "stride = 5\n");
  CHECK(cfg.params.c1 == 2.5);
  CHECK(cfg.params.k == 0.125);
  CHECK(cfg.params.L2 == 1.75);
  CHECK(cfg.n1 == 40);
  CHECK(cfg.n2 == 128);
  CHECK(cfg.nw == 6);
  CHECK(cfg.eps_list == std::vector<double>{0.3, 0.2, 0.1});
  CHECK(cfg.theta == 0.5);
  CHECK(cfg.preset == "bump");
  CHECK(cfg.amplitude == -2.0);
  CHECK(cfg.out_dir == "some/where");
  CHECK(cfg.stride == 5);
  CHECK(parse_config("eps_list = 0.1").eps_list == std::vector<double>{0.1});
}

TEST_CASE("configuration errors") {
  CHECK(capture<InvalidValue>([] { parse_config("k1 = -3"); }).name() == "k1");
  CHECK(capture<InvalidValue>([] { parse_config("c = nan"); }).name() == "c");
  CHECK(capture<InvalidValue>([] { parse_config("N1 = 12.5"); }).name() == "N1");
  CHECK(capture<UnknownKey>([] { parse_config("epz_list = 0.1"); }).name() == "epz_list");
  CHECK(capture<ParseError>([] { parse_config("# ok\nN1 128"); }).line() == 2);
  CHECK(capture<ParseError>([] { parse_config("dt = 1\ndt = 2"); }).line() == 2);
  CHECK(capture<InvalidValue>([] { parse_config("eps_list ="); }).name() == "eps_list");
  CHECK(capture<InvalidValue>([] { parse_config("eps_list = {}"); }).name() == "eps_list");
  CHECK(capture<InvalidValue>([] { parse_config("eps_list = {0.1, 0.2"); }).name() == "eps_list");

  auto bad = [](auto edit) {
    RunConfig cfg;
    edit(cfg);
    return capture<InvalidValue>([&] { validate_config(cfg); }).name();
  };
  CHECK(bad([](RunConfig& c) { c.eps_list = {0.1, 0.2}; }) == "eps_list");
  CHECK(bad([](RunConfig& c) { c.eps_list = {0.1, 0.1}; }) == "eps_list");
  CHECK(bad([](RunConfig& c) { c.eps_list = {1.0}; }) == "eps_list");
  CHECK(bad([](RunConfig& c) { c.eps_list = {}; }) == "eps_list");
  CHECK(bad([](RunConfig& c) { c.theta = 0.7; }) == "theta");
  CHECK(bad([](RunConfig& c) { c.T = 1e-4; }) == "T");
  CHECK(bad([](RunConfig& c) { c.dt = 0; }) == "dt");
  CHECK(bad([](RunConfig& c) { c.preset = "square"; }) == "preset");
  CHECK(bad([](RunConfig& c) { c.params.k = 0; }) == "k");
  CHECK_THROWS_AS(run_sweep([] { RunConfig c; c.eps_list = {}; return c; }()), InvalidValue);

  CHECK_THROWS_AS(load_config("/nonexistent/thinwall.cfg"), IoFailure);
}

TEST_CASE("shipped configs load and validate") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(THINWALL_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    INFO(entry.path().string());
    CHECK_NOTHROW(validate_config(load_config(entry.path())));
    ++count;
  }
  CHECK(count >= 5);
}

TEST_CASE("sweep with a single eps") {
  RunConfig cfg = small_config();
  cfg.eps_list = {0.1};
  const ConvergenceReport r = run_sweep(cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.eps == std::vector<double>{0.1});
  CHECK(r.rows[0].gaps.size() == 4);
  CHECK(r.limit_pairings.size() == 4);
  for (const auto& g : r.rows[0].gaps)
    for (const double v : g.gap) CHECK(std::isfinite(v));
}

TEST_CASE("default sine sweep: gaps decrease") {
  const ConvergenceReport r = run_sweep(RunConfig{});
  REQUIRE(r.rows.size() == 4);
  for (std::size_t i = 1; i < r.eps.size(); ++i) CHECK(r.eps[i] < r.eps[i - 1]);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t t = 0; t < kNumTerms; ++t) {
      std::vector<double> seq;
      for (const auto& row : r.rows) seq.push_back(row.gaps[k].gap[t]);
      INFO(r.rows[0].gaps[k].testfn_id << " " << kTermNames[t]);
      // antisymmetric data leaves the point mass at rest: those gaps are roundoff
      if (*std::max_element(seq.begin(), seq.end()) <= 1e-12) continue;
      for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] < seq[i - 1]);
    }
  }
  for (const auto& row : r.rows) {
    CHECK(row.g_sup_diff <= 1e-12);
    CHECK(row.h0_norm <= 2 * r.limit_h0_norm);
    CHECK(row.w0_seminorm <= 2 * r.limit_w0_seminorm);
  }
}

TEST_CASE("trajectory CSV basics") {
  const fs::path dir = scratch("basics");
  const PhysicalParams p = unit_params();
  const LimitMesh m(p, 8, 8);

  Trajectory<LimitState> empty;
  write_trajectory_csv(empty, dir / "empty.csv");
  CHECK(slurp(dir / "empty.csv") == "t,E,W_sq,z\n");

  const auto zero = evolve_limit(LimitState::zero(m), 0.05, 0.1, 1.0, p, m);
  REQUIRE(zero.size() == 3);
  write_trajectory_csv(zero, dir / "zero.csv");
  const CsvTable t = read_csv(dir / "zero.csv");
  CHECK(t.header == std::vector<std::string>{"t", "E", "W_sq", "z"});
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) CHECK(parse_double(row[1]) == 0.0);
  CHECK(slurp(dir / "zero.csv").find('\r') == std::string::npos);

  const EpsMesh em(p, 0.1, 8, 4, 8);
  const auto ez = evolve_eps(EpsState::zero(em), 0.05, 0.1, 1.0, p, em);
  write_trajectory_csv(ez, em, dir / "eps.csv");
  CHECK(read_csv(dir / "eps.csv").header.back() == "g_eps");

  // stride keeps the first and last samples
  const auto longer = evolve_limit(LimitState::zero(m), 0.01, 0.1, 1.0, p, m);
  write_trajectory_csv(longer, dir / "stride.csv", 4);
  const CsvTable s = read_csv(dir / "stride.csv");
  REQUIRE(s.rows.size() == 4);  // samples 0, 4, 8, 10
  CHECK(parse_double(s.rows.back()[0]) == longer.times.back());

  CHECK_THROWS_AS(write_trajectory_csv(zero, dir / "missing_dir" / "x.csv"), IoFailure);
}

TEST_CASE("17-digit serialization round-trips") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 20000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(parse_double(format_double(v)) == v);
    ++checked;
  }
  for (const double v : {0.0, -0.0, 1.0 / 3, 0.1, 1e-320, std::numeric_limits<double>::max(),
                         std::numeric_limits<double>::min(), -2.5e-7}) {
    const double back = parse_double(format_double(v));
    CHECK(back == v);
    CHECK(std::signbit(back) == std::signbit(v));
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3) == "0.33333333333333331");
  CHECK_THROWS(parse_double("1,5"));
}

TEST_CASE("report CSV round-trips the report") {
  const fs::path dir = scratch("report");
  RunConfig cfg = small_config();
  cfg.preset = "bump";
  const ConvergenceReport r = run_sweep(cfg);
  write_report_csv(r, dir / "report.csv");
  const CsvTable t = read_csv(dir / "report.csv");
  CHECK(t.header == std::vector<std::string>{"eps", "testfn_id", "term_name", "gap", "g_sup_diff",
                                             "h0_norm", "w0_seminorm"});
  REQUIRE(t.rows.size() == r.rows.size() * 4 * kNumTerms);
  std::size_t i = 0;
  for (const auto& row : r.rows)
    for (const auto& g : row.gaps)
      for (std::size_t k = 0; k < kNumTerms; ++k, ++i) {
        const auto& cells = t.rows[i];
        CHECK(parse_double(cells[0]) == row.eps);
        CHECK(cells[1] == g.testfn_id);
        CHECK(cells[2] == kTermNames[k]);
        CHECK(parse_double(cells[3]) == g.gap[k]);
        CHECK(parse_double(cells[4]) == row.g_sup_diff);
        CHECK(parse_double(cells[5]) == row.h0_norm);
        CHECK(parse_double(cells[6]) == row.w0_seminorm);
      }
}

TEST_CASE("repeated sweeps are byte-identical") {
  const fs::path dir = scratch("determinism");
  RunConfig cfg = small_config();
  cfg.preset = "bump";
  write_report_csv(run_sweep(cfg), dir / "a.csv");
  write_report_csv(run_sweep(cfg), dir / "b.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK_FALSE(slurp(dir / "a.csv").empty());
}

TEST_CASE("CLI exit codes and outputs") {
  const fs::path dir = scratch("cli");
  const std::string cfgdir = THINWALL_CONFIG_DIR;

  CHECK(run_cli("steady --config " + cfgdir + "/steady.cfg --out " + (dir / "steady").string()) == 0);
  CHECK(fs::exists(dir / "steady" / "steady.csv"));
  CHECK(fs::exists(dir / "steady" / "steady_refinement.csv"));

  CHECK(run_cli("evolve-eps --config " + cfgdir + "/energy.cfg --out " + (dir / "eps").string()) == 0);
  CHECK(fs::exists(dir / "eps" / "trajectory_eps_0.csv"));
  CHECK(fs::exists(dir / "eps" / "trajectory_eps_1.csv"));

  CHECK(run_cli("dissipation --config " + cfgdir + "/dissipation.cfg --out " + (dir / "d").string()) == 0);
  CHECK(read_csv(dir / "d" / "dissipation.csv").rows.size() == 10);

  std::ofstream(dir / "bad.cfg") << "epz_list = 0.1\n";
  CHECK(run_cli("sweep --config " + (dir / "bad.cfg").string() + " --out " + dir.string()) == 1);
  std::ofstream(dir / "neg.cfg") << "k1 = -3\n";
  CHECK(run_cli("evolve-limit --config " + (dir / "neg.cfg").string() + " --out " + dir.string()) == 1);
  CHECK(run_cli("no-such-command") == 1);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("sweep --config " + (dir / "absent.cfg").string() + " --out " + dir.string()) == 2);
}
