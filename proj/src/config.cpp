#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "thinwall/errors.hpp"
#include "thinwall/harness.hpp"

namespace thinwall {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value))
    throw InvalidValue(std::string(key), std::string(text));
  return value;
}

double to_positive(std::string_view key, std::string_view text) {
  const double v = to_double(key, text);
  if (!(v > 0)) throw InvalidValue(std::string(key), "must be positive");
  return v;
}

Index to_count(std::string_view key, std::string_view text, Index minimum) {
  text = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || value < minimum)
    throw InvalidValue(std::string(key), std::string(text));
  return static_cast<Index>(value);
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw InvalidValue(std::string(key), "unbalanced braces");
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(to_double(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto param = [&t](const char* name, double RawParams::*field) {
      t[name] = [name, field](RunConfig& c, std::string_view v) {
        c.params.*field = to_positive(name, v);
      };
    };
    param("c1", &RawParams::c1);
    param("rho1", &RawParams::rho1);
    param("k1", &RawParams::k1);
    param("c2", &RawParams::c2);
    param("rho2", &RawParams::rho2);
    param("k2", &RawParams::k2);
    param("c", &RawParams::c);
    param("k", &RawParams::k);
    param("L1", &RawParams::L1);
    param("L2", &RawParams::L2);
    t["N1"] = [](RunConfig& c, std::string_view v) { c.n1 = to_count("N1", v, 2); };
    t["N2"] = [](RunConfig& c, std::string_view v) { c.n2 = to_count("N2", v, 2); };
    t["Nw"] = [](RunConfig& c, std::string_view v) { c.nw = to_count("Nw", v, 2); };
    t["eps_list"] = [](RunConfig& c, std::string_view v) { c.eps_list = to_list("eps_list", v); };
    t["dt"] = [](RunConfig& c, std::string_view v) { c.dt = to_positive("dt", v); };
    t["T"] = [](RunConfig& c, std::string_view v) { c.T = to_positive("T", v); };
    t["theta"] = [](RunConfig& c, std::string_view v) { c.theta = to_double("theta", v); };
    t["preset"] = [](RunConfig& c, std::string_view v) { c.preset = std::string(trim(v)); };
    t["amplitude"] = [](RunConfig& c, std::string_view v) { c.amplitude = to_double("amplitude", v); };
    t["out_dir"] = [](RunConfig& c, std::string_view v) { c.out_dir = std::string(trim(v)); };
    t["stride"] = [](RunConfig& c, std::string_view v) { c.stride = to_count("stride", v, 1); };
    return t;
  }();
  return table;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = line.substr(eq + 1);
    if (key.empty()) throw ParseError(line_no, "missing key");

    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw UnknownKey(std::string(key));
    if (!seen.emplace(key).second) throw ParseError(line_no, "duplicate key " + std::string(key));
    it->second(cfg, value);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& cfg) {
  try {
    validate_params(cfg.params);
  } catch (const NonPositiveParameter& e) {
    throw InvalidValue(e.name(), "must be positive");
  }
  if (cfg.eps_list.empty()) throw InvalidValue("eps_list", "empty");
  const double limit = std::min(cfg.params.L1, cfg.params.L2);
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
    const double e = cfg.eps_list[i];
    if (!(e > 0) || !(e < limit)) throw InvalidValue("eps_list", "entries must lie in (0, min(L1, L2))");
    if (i > 0 && !(e < cfg.eps_list[i - 1])) throw InvalidValue("eps_list", "must be strictly decreasing");
  }
  if (!(cfg.dt > 0)) throw InvalidValue("dt");
  if (!(cfg.T >= cfg.dt)) throw InvalidValue("T", "must be at least dt");
  if (cfg.theta != 0.5 && cfg.theta != 1.0) throw InvalidValue("theta", "must be 0.5 or 1");
  if (std::find(preset_names().begin(), preset_names().end(), cfg.preset) == preset_names().end())
    throw InvalidValue("preset", cfg.preset);
  if (!std::isfinite(cfg.amplitude)) throw InvalidValue("amplitude");
  if (cfg.n1 < 2) throw InvalidValue("N1");
  if (cfg.n2 < 2) throw InvalidValue("N2");
  if (cfg.nw < 2) throw InvalidValue("Nw");
  if (cfg.stride < 1) throw InvalidValue("stride");
}

}  // namespace thinwall
