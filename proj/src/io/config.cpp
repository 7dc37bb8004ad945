#include "ptlgi/io/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace ptlgi {
namespace io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double x = 0;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for " + key + ": '" + value + "'");
  }
  if (pos != value.size() || !std::isfinite(x)) {
    throw ConfigError("invalid numeric value for " + key + ": '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long x = 0;
  try {
    x = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for " + key + ": '" + value + "'");
  }
  if (pos != value.size() || x < std::numeric_limits<int>::min() ||
      x > std::numeric_limits<int>::max()) {
    throw ConfigError("invalid integer value for " + key + ": '" + value + "'");
  }
  return static_cast<int>(x);
}

std::int64_t parse_int64(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for " + key + ": '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("invalid integer value for " + key + ": '" + value + "'");
  }
  return static_cast<std::int64_t>(x);
}

std::uint64_t parse_uint64(const std::string& key, const std::string& value) {
  if (value.find('-') != std::string::npos) {
    throw ConfigError("invalid unsigned value for " + key + ": '" + value + "'");
  }
  std::size_t pos = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid unsigned value for " + key + ": '" + value + "'");
  }
  if (pos != value.size()) {
    throw ConfigError("invalid unsigned value for " + key + ": '" + value + "'");
  }
  return static_cast<std::uint64_t>(x);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string cell = trim(item);
    if (cell.empty()) {
      throw ConfigError("empty element in list value for " + key);
    }
    out.push_back(parse_double(key, cell));
  }
  if (out.empty()) {
    throw ConfigError("empty list value for " + key);
  }
  return out;
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "j_khz") {
    cfg.j_khz = parse_double(key, value);
  } else if (key == "gamma_khz") {
    cfg.gamma_khz = parse_double(key, value);
  } else if (key == "gamma_ratio") {
    cfg.gamma_ratio = parse_double(key, value);
  } else if (key == "gamma_ratios") {
    cfg.gamma_ratios = parse_double_list(key, value);
  } else if (key == "order") {
    cfg.order = parse_int(key, value);
  } else if (key == "tau_max") {
    cfg.tau_max = parse_double(key, value);
  } else if (key == "tau_points") {
    cfg.tau_points = parse_int(key, value);
  } else if (key == "grid") {
    cfg.grid = parse_int(key, value);
  } else if (key == "scan_points") {
    cfg.scan_points = parse_int(key, value);
  } else if (key == "objective") {
    cfg.objective = value;
  } else if (key == "tau_strategy") {
    cfg.tau_strategy = value;
  } else if (key == "fixed_tau") {
    cfg.fixed_tau = parse_double(key, value);
  } else if (key == "shots") {
    cfg.shots = parse_int64(key, value);
  } else if (key == "rounds") {
    cfg.rounds = parse_int(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_uint64(key, value);
  } else if (key == "tau_list") {
    cfg.tau_list = parse_double_list(key, value);
  } else if (key == "theta") {
    cfg.theta = parse_double(key, value);
  } else if (key == "phi") {
    cfg.phi = parse_double(key, value);
  } else if (key == "horizon") {
    cfg.horizon = parse_double(key, value);
  } else if (key == "samples") {
    cfg.samples = parse_int(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_double(key, value);
  } else if (key == "tol_trace_distance") {
    cfg.tol_trace_distance = parse_double(key, value);
  } else if (key == "tol_trace_drift") {
    cfg.tol_trace_drift = parse_double(key, value);
  } else if (key == "tol_positivity") {
    cfg.tol_positivity = parse_double(key, value);
  } else if (key == "output") {
    cfg.output = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path);
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("malformed line " + std::to_string(lineno) + " in " + path +
                        " (expected key=value)");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("missing key on line " + std::to_string(lineno) + " in " + path);
    }
    apply_override(base, key, value);
  }
  return base;
}

double effective_gamma_ratio(const RunConfig& cfg) {
  if (cfg.gamma_khz.has_value() && cfg.gamma_ratio.has_value()) {
    throw ConfigError("exactly one of gamma_khz and gamma_ratio may be set");
  }
  if (cfg.gamma_khz.has_value()) {
    return *cfg.gamma_khz / cfg.j_khz;
  }
  if (cfg.gamma_ratio.has_value()) {
    return *cfg.gamma_ratio;
  }
  throw ConfigError("one of gamma_khz or gamma_ratio is required");
}

std::vector<double> resolve_gamma_ratios(const RunConfig& cfg,
                                         const std::vector<double>& fallback) {
  if (!cfg.gamma_ratios.empty()) {
    return cfg.gamma_ratios;
  }
  if (cfg.gamma_khz.has_value() || cfg.gamma_ratio.has_value()) {
    return {effective_gamma_ratio(cfg)};
  }
  return fallback;
}

namespace {

void check_single_gamma(const RunConfig& cfg) {
  effective_gamma_ratio(cfg);  // throws when none or both are set
}

void check_ratio_range(const std::vector<double>& ratios, double hi, const char* field,
                       const char* range) {
  for (const double r : ratios) {
    if (!(r >= 0) || !(r <= hi)) {
      throw ConfigError(std::string(field) + " values must lie in " + range);
    }
  }
}

}  // namespace

void validate(const RunConfig& cfg) {
  const double pi = std::numbers::pi_v<double>;
  if (!(cfg.j_khz > 0) || !std::isfinite(cfg.j_khz)) {
    throw ConfigError("j_khz must be positive and finite");
  }
  if (cfg.gamma_khz.has_value() && cfg.gamma_ratio.has_value()) {
    throw ConfigError("exactly one of gamma_khz and gamma_ratio may be set");
  }
  if (cfg.gamma_khz.has_value() && !(*cfg.gamma_khz >= 0)) {
    throw ConfigError("gamma_khz must be nonnegative");
  }
  if (cfg.gamma_ratio.has_value() && !(*cfg.gamma_ratio >= 0)) {
    throw ConfigError("gamma_ratio must be nonnegative");
  }
  if (!(cfg.tau_max >= 0) || !std::isfinite(cfg.tau_max)) {
    throw ConfigError("tau_max must be nonnegative and finite");
  }
  if (cfg.tau_points < 2) {
    throw ConfigError("tau_points must be at least 2");
  }
  if (cfg.scan_points < 3) {
    throw ConfigError("scan_points must be at least 3");
  }
  if (cfg.shots < 1) {
    throw ConfigError("shots must be at least 1");
  }
  if (cfg.rounds < 2) {
    throw ConfigError("rounds must be at least 2");
  }
  if (cfg.theta.has_value() && (!(*cfg.theta >= 0) || !(*cfg.theta <= pi))) {
    throw ConfigError("theta must lie in [0, pi]");
  }
  if (cfg.phi.has_value() && (!(*cfg.phi >= 0) || !(*cfg.phi < 2 * pi))) {
    throw ConfigError("phi must lie in [0, 2 pi)");
  }
  if (!(cfg.dt > 0) || !(cfg.dt <= 0.01)) {
    throw ConfigError("dt must lie in (0, 0.01] (units of 1/J)");
  }
  if (cfg.horizon.has_value() && (!(*cfg.horizon >= 0) || !std::isfinite(*cfg.horizon))) {
    throw ConfigError("horizon must be nonnegative and finite");
  }
  if (cfg.samples.has_value() && *cfg.samples < 2) {
    throw ConfigError("samples must be at least 2");
  }
  if (!(cfg.tol_trace_distance > 0) || !(cfg.tol_trace_drift > 0) || !(cfg.tol_positivity > 0)) {
    throw ConfigError("tolerances must be positive");
  }

  const std::string& cmd = cfg.command;
  const bool needs_order = cmd == "k-curve" || cmd == "surface" || cmd == "bounds" ||
                           cmd == "optimize" || cmd == "shots";
  if (needs_order && cfg.order != 3 && cfg.order != 4) {
    throw ConfigError("order must be 3 or 4");
  }
  if (cmd == "k-curve" || cmd == "surface") {
    check_ratio_range(resolve_gamma_ratios(cfg, {}), 1 - 1e-12, "gamma ratio", "[0, 1)");
  } else if (cmd == "bounds") {
    check_ratio_range(resolve_gamma_ratios(cfg, {}), 0.999, "gamma ratio", "[0, 0.999]");
  } else if (cmd == "optimize") {
    check_single_gamma(cfg);
    if (cfg.grid < 41) {
      throw ConfigError("grid must be at least 41");
    }
    if (cfg.objective != "max" && cfg.objective != "min") {
      throw ConfigError("objective must be max or min");
    }
    if (cfg.tau_strategy != "extremize" && cfg.tau_strategy != "fixed") {
      throw ConfigError("tau_strategy must be extremize or fixed");
    }
    if (cfg.tau_strategy == "fixed" && !(cfg.fixed_tau > 0)) {
      throw ConfigError("fixed_tau must be positive when tau_strategy is fixed");
    }
    if (cfg.tau_strategy == "extremize" && !(effective_gamma_ratio(cfg) < 1)) {
      throw ConfigError("gamma ratio must be below 1 when tau_strategy is extremize");
    }
  } else if (cmd == "shots") {
    check_single_gamma(cfg);
    for (const double jt : cfg.tau_list) {
      if (!(jt > 0) || !std::isfinite(jt)) {
        throw ConfigError("tau_list values must be positive and finite");
      }
    }
  } else if (cmd == "lindblad-check") {
    for (const double r : resolve_gamma_ratios(cfg, {})) {
      if (!(r >= 0) || !std::isfinite(r)) {
        throw ConfigError("gamma ratio values must be nonnegative and finite");
      }
    }
  } else if (cmd == "bloch") {
    check_single_gamma(cfg);
  } else if (cmd != "k-curve" && cmd != "surface") {
    throw ConfigError("unknown command: " + cmd);
  }
}

}  // namespace io
}  // namespace ptlgi
