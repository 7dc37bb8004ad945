#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptlgi {
namespace io {

// configuration problem: bad key, bad value, failed cross-field invariant;
// mapped to process exit code 1
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// filesystem problem (unreadable config, unwritable output); exit code 3
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// one flat bag of settings for every subcommand; keys not used by a command
// are ignored by it; times are dimensionless (J tau or J t), dt and horizon
// are in units of 1/J, and J and gamma magnitudes are in 2 pi x kHz
struct RunConfig {
  std::string command;

  double j_khz = 10.4;
  std::optional<double> gamma_khz;
  std::optional<double> gamma_ratio;
  std::vector<double> gamma_ratios;

  int order = 3;
  double tau_max = 0;  // 0 means one full period, capped at J tau = 50
  int tau_points = 500;
  int grid = 201;
  int scan_points = 2000;
  std::string objective = "max";
  std::string tau_strategy = "extremize";
  double fixed_tau = 0;

  std::int64_t shots = 500;
  int rounds = 10;
  std::uint64_t seed = 12345;
  std::vector<double> tau_list;

  std::optional<double> theta;
  std::optional<double> phi;

  std::optional<double> horizon;  // defaults: 5 for lindblad-check, 2 for bloch
  std::optional<int> samples;     // default 100 for bloch
  double dt = 1e-3;
  double tol_trace_distance = 1e-6;
  double tol_trace_drift = 1e-9;
  double tol_positivity = 1e-9;

  std::string output;  // empty means stdout
};

// assigns one key=value pair, converting and range-checking the value;
// throws ConfigError naming the key on any problem
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

// flat key=value file with '#' comment lines and blank lines allowed
RunConfig parse_config_file(const std::string& path, RunConfig base);

// cross-field and per-command validation; throws ConfigError with a message
// naming the offending field
void validate(const RunConfig& cfg);

// the single gamma/J ratio of a command that needs exactly one damping
// value; throws ConfigError when none or both of gamma_khz and gamma_ratio
// are set
double effective_gamma_ratio(const RunConfig& cfg);

// the list of gamma/J ratios for multi-slice commands: gamma_ratios if
// nonempty, else the single configured gamma, else the fallback
std::vector<double> resolve_gamma_ratios(const RunConfig& cfg, const std::vector<double>& fallback);

}  // namespace io
}  // namespace ptlgi
