#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "thinwall/diagnostics.hpp"
#include "thinwall/errors.hpp"
#include "thinwall/harness.hpp"

namespace thinwall {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error("not a number: " + std::string(text));
  return value;
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoFailure(path.string());
    bool first = true;
    for (const auto h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }

  CsvWriter& field(std::string_view s) {
    if (!line_empty_) out_ << ',';
    out_ << s;
    line_empty_ = false;
    return *this;
  }
  CsvWriter& field(double v) { return field(format_double(v)); }
  CsvWriter& field(long long v) { return field(std::to_string(v)); }
  void end_row() {
    out_ << '\n';
    line_empty_ = true;
  }

  void finish() {
    out_.flush();
    if (!out_) throw IoFailure(path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool line_empty_{true};
};

template <typename State, typename LastColumn>
void write_trajectory(const Trajectory<State>& traj, const std::filesystem::path& path,
                      std::string_view last_name, Index stride, LastColumn last) {
  if (stride < 1) throw InvalidArgument("stride must be positive");
  CsvWriter w(path, {"t", "E", "W_sq", last_name});
  const std::size_t n = traj.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != n) continue;
    w.field(traj.times[i]).field(traj.energy[i]).field(traj.w_sq[i]).field(last(traj.states[i]));
    w.end_row();
  }
  w.finish();
}

}  // namespace

void write_report_csv(const ConvergenceReport& report, const std::filesystem::path& path) {
  CsvWriter w(path, {"eps", "testfn_id", "term_name", "gap", "g_sup_diff", "h0_norm", "w0_seminorm"});
  for (const EpsRow& row : report.rows) {
    for (const GapRecord& g : row.gaps) {
      for (std::size_t t = 0; t < kNumTerms; ++t) {
        w.field(row.eps).field(g.testfn_id).field(kTermNames[t]).field(g.gap[t]);
        w.field(row.g_sup_diff).field(row.h0_norm).field(row.w0_seminorm);
        w.end_row();
      }
    }
  }
  w.finish();
}

void write_trajectory_csv(const Trajectory<LimitState>& traj, const std::filesystem::path& path,
                          Index stride) {
  write_trajectory(traj, path, "z", stride, [](const LimitState& y) { return y.z(); });
}

void write_trajectory_csv(const Trajectory<EpsState>& traj, const EpsMesh& m,
                          const std::filesystem::path& path, Index stride) {
  write_trajectory(traj, path, "g_eps", stride, [&](const EpsState& y) { return g_eps(y, m); });
}

void write_steady_csv(const SteadyStudy& study, const std::filesystem::path& cases_path,
                      const std::filesystem::path& refinement_path) {
  {
    CsvWriter w(cases_path, {"case", "x", "closed_form", "discrete"});
    for (const auto& c : study.cases) {
      for (Index j = 0; j < c.x.size(); ++j) {
        w.field(c.name).field(c.x(j)).field(c.closed_form(j)).field(c.discrete(j));
        w.end_row();
      }
    }
    w.finish();
  }
  CsvWriter w(refinement_path, {"case", "N", "max_diff"});
  for (const auto& r : study.refinement) {
    w.field(r.name).field(static_cast<long long>(r.n)).field(r.max_diff);
    w.end_row();
  }
  w.finish();
}

void write_dissipation_csv(const Trajectory<LimitState>& traj, const std::filesystem::path& path) {
  const std::vector<double> r = dissipation_residual(traj);
  CsvWriter w(path, {"t", "dE_dt", "W_star", "residual"});
  for (std::size_t n = 0; n < r.size(); ++n) {
    const double dt = traj.times[n + 1] - traj.times[n];
    const double de = (traj.energy[n + 1] - traj.energy[n]) / dt;
    const double w_star =
        traj.theta == 0.5 ? (traj.w_sq[n] + traj.w_sq[n + 1]) / 2 : traj.w_sq[n + 1];
    w.field(traj.times[n]).field(de).field(w_star).field(r[n]);
    w.end_row();
  }
  w.finish();
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(path.string());
  CsvTable table;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header) {
      table.header = std::move(cells);
      header = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace thinwall
