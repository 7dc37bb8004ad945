#include <deque>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ptlgi/io/commands.hpp"
#include "ptlgi/io/config.hpp"
#include "ptlgi/version.hpp"

namespace {

struct SubState {
  CLI::App* app = nullptr;
  std::string name;
  std::string config_path;
  // raw key=value overrides in the order they were given on the command line
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_config_options(SubState& st) {
  CLI::App* sub = st.app;
  sub->add_option("--config", st.config_path, "flat key=value config file read before any flag");
  const auto bind = [sub, &st](const std::string& flag, const std::string& key,
                               const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&st, key](const std::string& value) { st.overrides.emplace_back(key, value); },
        help);
  };
  bind("--output", "output", "output file path (default: stdout)");
  bind("--j-khz", "j_khz", "coupling J in 2 pi x kHz (default 10.4)");
  bind("--gamma-khz", "gamma_khz", "damping gamma in 2 pi x kHz");
  bind("--gamma-ratio", "gamma_ratio", "damping as the ratio gamma/J");
  bind("--gamma-ratios", "gamma_ratios", "comma separated gamma/J list for multi-slice commands");
  bind("--order", "order", "LGI order n (3 or 4)");
  bind("--tau-max", "tau_max", "J tau range end (0 = one period, capped at 50)");
  bind("--tau-points", "tau_points", "curve resolution (default 500)");
  bind("--scan-points", "scan_points", "tau scan resolution for extrema (default 2000)");
  bind("--grid", "grid", "theta/phi grid resolution for optimize (default 201)");
  bind("--objective", "objective", "optimize objective: max or min");
  bind("--tau-strategy", "tau_strategy", "optimize tau handling: extremize or fixed");
  bind("--fixed-tau", "fixed_tau", "J tau value used when tau_strategy=fixed");
  bind("--shots", "shots", "shots per round (default 500)");
  bind("--rounds", "rounds", "rounds for the 1 sigma spread (default 10)");
  bind("--seed", "seed", "64-bit RNG seed (default 12345)");
  bind("--tau-list", "tau_list", "comma separated J tau points for shots (default 0.8)");
  bind("--theta", "theta", "prepared-state polar angle (default pi/2)");
  bind("--phi", "phi", "prepared-state azimuth (default pi)");
  bind("--horizon", "horizon", "evolution horizon in 1/J (defaults: 5 lindblad-check, 2 bloch)");
  bind("--samples", "samples", "trajectory samples for bloch (default 100)");
  bind("--dt", "dt", "integrator step in 1/J (default 1e-3)");
  bind("--tol-trace-distance", "tol_trace_distance", "lindblad-check equivalence tolerance");
  bind("--tol-trace-drift", "tol_trace_drift", "lindblad-check trace conservation tolerance");
  bind("--tol-positivity", "tol_positivity", "lindblad-check eigenvalue floor tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LGI parameters of a dissipative two-level system under a PT-symmetric "
               "effective Hamiltonian"};
  app.set_version_flag("--version", std::string("ptlgi ") + ptlgi::kVersion);
  app.require_subcommand(1);

  std::deque<SubState> subs;
  const auto add_sub = [&](const std::string& name, const std::string& desc) {
    subs.emplace_back();
    SubState& st = subs.back();
    st.name = name;
    st.app = app.add_subcommand(name, desc);
    add_config_options(st);
  };
  add_sub("k-curve", "Kn versus J tau, numerical and closed form, per gamma/J slice");
  add_sub("surface", "Kn on a (gamma/J, J tau) grid in long CSV format");
  add_sub("bounds", "sup and inf of Kn over one tau period per gamma/J");
  add_sub("optimize", "extremal Kn over prepared states on a (theta, phi) grid");
  add_sub("lindblad-check", "no-jump equivalence, trace drift, and positivity report");
  add_sub("shots", "finite-shot Monte Carlo estimates with 1 sigma spreads");
  add_sub("bloch", "post-selected Bloch trajectory of the prepared state");

  CLI11_PARSE(app, argc, argv);

  for (const SubState& st : subs) {
    if (!st.app->parsed()) {
      continue;
    }
    try {
      ptlgi::io::RunConfig cfg;
      if (!st.config_path.empty()) {
        cfg = ptlgi::io::parse_config_file(st.config_path, cfg);
      }
      for (const auto& [key, value] : st.overrides) {
        ptlgi::io::apply_override(cfg, key, value);
      }
      cfg.command = st.name;
      return ptlgi::io::execute(cfg);
    } catch (const ptlgi::io::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 1;
    } catch (const ptlgi::io::IoError& e) {
      std::cerr << "io error: " << e.what() << "\n";
      return 3;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
