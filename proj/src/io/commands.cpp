#include "ptlgi/io/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "ptlgi/dynamics.hpp"
#include "ptlgi/io/csv.hpp"
#include "ptlgi/lgi.hpp"
#include "ptlgi/lindblad.hpp"
#include "ptlgi/params.hpp"
#include "ptlgi/shots.hpp"
#include "ptlgi/sweep.hpp"
#include "ptlgi/version.hpp"

namespace ptlgi {
namespace io {

namespace {

using Params = PtParams<double>;
using State = QubitState<double>;

constexpr double kPi = std::numbers::pi_v<double>;

std::string fmt(double x) { return format_number(x); }

std::string list_to_string(const std::vector<double>& xs) {
  if (xs.empty()) {
    return "none";
  }
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      s += ',';
    }
    s += fmt(xs[i]);
  }
  return s;
}

std::string opt_to_string(const std::optional<double>& x) {
  return x.has_value() ? fmt(*x) : "none";
}

void write_preamble(CsvWriter& w, const RunConfig& cfg) {
  w.comment("ptlgi " + std::string(kVersion));
  w.comment("command: " + cfg.command);
  std::string echo = "config:";
  echo += " j_khz=" + fmt(cfg.j_khz);
  echo += " gamma_khz=" + opt_to_string(cfg.gamma_khz);
  echo += " gamma_ratio=" + opt_to_string(cfg.gamma_ratio);
  echo += " gamma_ratios=" + list_to_string(cfg.gamma_ratios);
  echo += " order=" + std::to_string(cfg.order);
  echo += " tau_max=" + fmt(cfg.tau_max);
  echo += " tau_points=" + std::to_string(cfg.tau_points);
  echo += " grid=" + std::to_string(cfg.grid);
  echo += " scan_points=" + std::to_string(cfg.scan_points);
  echo += " objective=" + cfg.objective;
  echo += " tau_strategy=" + cfg.tau_strategy;
  echo += " fixed_tau=" + fmt(cfg.fixed_tau);
  echo += " shots=" + std::to_string(cfg.shots);
  echo += " rounds=" + std::to_string(cfg.rounds);
  echo += " seed=" + std::to_string(cfg.seed);
  echo += " tau_list=" + list_to_string(cfg.tau_list);
  echo += " theta=" + opt_to_string(cfg.theta);
  echo += " phi=" + opt_to_string(cfg.phi);
  echo += " horizon=" + opt_to_string(cfg.horizon);
  echo += " samples=" + (cfg.samples.has_value() ? std::to_string(*cfg.samples) : "none");
  echo += " dt=" + fmt(cfg.dt);
  echo += " tol_trace_distance=" + fmt(cfg.tol_trace_distance);
  echo += " tol_trace_drift=" + fmt(cfg.tol_trace_drift);
  echo += " tol_positivity=" + fmt(cfg.tol_positivity);
  echo += " output=" + (cfg.output.empty() ? std::string("stdout") : cfg.output);
  w.comment(echo);
}

// the prepared state: (theta, phi) when configured, otherwise the +1
// eigenvector of the default observable
State resolve_target(const RunConfig& cfg) {
  if (cfg.theta.has_value() || cfg.phi.has_value()) {
    return target_state<double>({cfg.theta.value_or(kPi / 2), cfg.phi.value_or(kPi)});
  }
  return sigma_y_observable<double>().plus;
}

}  // namespace

int cmd_k_curve(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  const DichotomicObservable<double> obs = sigma_y_observable<double>();
  const State target = resolve_target(cfg);
  const std::vector<double> defaults = cfg.order == 3
                                           ? std::vector<double>{0.0, 0.472, 0.669, 0.942}
                                           : std::vector<double>{0.0, 0.708, 0.857, 0.915};
  const std::vector<double> ratios = resolve_gamma_ratios(cfg, defaults);
  w.header({"j_tau", "k_oracle", "k_closed", "abs_diff"});
  for (const double r : ratios) {
    const Params p = make_params(cfg.j_khz, r * cfg.j_khz);
    const double jt_max = cfg.tau_max > 0 ? cfg.tau_max : tau_scan_domain(p).tau_max * p.j;
    w.comment("slice gamma_ratio=" + fmt(r));
    for (int i = 0; i < cfg.tau_points; ++i) {
      const double jt = jt_max * (i + 1) / cfg.tau_points;
      const double tau = jt / p.j;
      const double oracle = k_n(p, make_schedule(cfg.order, tau), target, obs).value;
      const double closed = cfg.order == 3 ? k3_pt_closed(p, tau) : k4_pt_closed(p, tau);
      w.numeric_row({jt, oracle, closed, std::abs(oracle - closed)});
    }
  }
  return 0;
}

int cmd_surface(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  const DichotomicObservable<double> obs = sigma_y_observable<double>();
  const State target = resolve_target(cfg);
  std::vector<double> defaults;
  defaults.reserve(28);
  for (int i = 0; i < 25; ++i) {
    defaults.push_back(0.96 * i / 24);
  }
  defaults.push_back(4.9 / 10.4);
  defaults.push_back(7.0 / 10.4);
  defaults.push_back(9.7 / 10.4);
  std::vector<double> ratios = resolve_gamma_ratios(cfg, defaults);
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
  const double jt_max = cfg.tau_max > 0 ? cfg.tau_max : 15.0;
  std::vector<double> j_taus(static_cast<std::size_t>(cfg.tau_points));
  for (std::size_t i = 0; i < j_taus.size(); ++i) {
    j_taus[i] = jt_max * static_cast<double>(i + 1) / cfg.tau_points;
  }
  const Params p_base = make_params(cfg.j_khz, 0.0);
  const SweepGrid<double> grid = k_surface(p_base, ratios, j_taus, cfg.order, target, obs);
  w.header({"gamma_ratio", "j_tau", "k"});
  for (std::size_t i = 0; i < grid.gamma_ratios.size(); ++i) {
    for (std::size_t j = 0; j < grid.j_taus.size(); ++j) {
      w.numeric_row({grid.gamma_ratios[i], grid.j_taus[j],
                     grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
  }
  return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  const DichotomicObservable<double> obs = sigma_y_observable<double>();
  const State target = resolve_target(cfg);
  const std::vector<double> fallback = {0.0,   0.3,   0.472, 0.6,   0.669,
                                        0.708, 0.857, 0.9,   0.915, 0.942};
  std::vector<double> ratios = resolve_gamma_ratios(cfg, fallback);
  const double ep_proxy = 1 - 1e-3;
  if (std::find(ratios.begin(), ratios.end(), ep_proxy) == ratios.end()) {
    ratios.push_back(ep_proxy);
  }
  const Params p_base = make_params(cfg.j_khz, 0.0);
  const BoundCurve<double> curve =
      extremal_bounds(p_base, ratios, cfg.order, target, obs, cfg.scan_points);
  w.header({"gamma_ratio", "sup", "argmax_tau", "inf", "argmin_tau"});
  for (const BoundRecord<double>& rec : curve.records) {
    if (rec.gamma_ratio == ep_proxy) {
      w.comment("ep_proxy gamma_ratio=" + fmt(ep_proxy));
    }
    w.numeric_row({rec.gamma_ratio, rec.sup, rec.argmax_j_tau, rec.inf, rec.argmin_j_tau});
  }
  return 0;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  const double r = effective_gamma_ratio(cfg);
  const Params p = make_params(cfg.j_khz, r * cfg.j_khz);
  const Objective obj = cfg.objective == "max" ? Objective::maximize : Objective::minimize;
  const TauStrategy strat =
      cfg.tau_strategy == "fixed" ? TauStrategy::fixed : TauStrategy::extremize;
  const DichotomicObservable<double> obs = sigma_y_observable<double>();
  const OptimizationResult<double> res =
      optimize_target_state(p, cfg.order, obj, cfg.grid, strat, cfg.fixed_tau, obs,
                            cfg.scan_points);
  w.header({"theta", "phi", "k"});
  for (std::size_t i = 0; i < res.thetas.size(); ++i) {
    for (std::size_t j = 0; j < res.phis.size(); ++j) {
      w.numeric_row({res.thetas[i], res.phis[j],
                     res.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
    }
  }
  w.comment("optimum: theta=" + fmt(res.best.theta) + " phi=" + fmt(res.best.phi) +
            " value=" + fmt(res.best_value) + " j_tau=" + fmt(res.best_j_tau));
  const ObjectiveSample<double> at_zero = evaluate_objective(
      p, cfg.order, obj, {res.best.theta, 0.0}, strat, cfg.fixed_tau, obs, cfg.scan_points);
  const ObjectiveSample<double> at_wrap =
      evaluate_objective(p, cfg.order, obj, {res.best.theta, 2 * kPi - 1e-9}, strat,
                         cfg.fixed_tau, obs, cfg.scan_points);
  w.comment("phi_periodicity: theta=" + fmt(res.best.theta) + " k_phi_0=" + fmt(at_zero.value) +
            " k_phi_2pi=" + fmt(at_wrap.value) +
            " abs_diff=" + fmt(std::abs(at_zero.value - at_wrap.value)));
  return 0;
}

int cmd_lindblad_check(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  const std::vector<double> fallback = {0.0, 0.472, 0.708, 0.942};
  const std::vector<double> ratios = resolve_gamma_ratios(cfg, fallback);
  const State target = resolve_target(cfg);
  const double horizon_j = cfg.horizon.value_or(5.0);
  bool all_pass = true;
  w.header({"gamma_ratio", "max_trace_distance", "trace_drift", "min_eigenvalue", "pass"});
  for (const double r : ratios) {
    const Params p = make_params(cfg.j_khz, r * cfg.j_khz);
    const double dt = cfg.dt / p.j;
    const double horizon = horizon_j / p.j;
    const DensityMatrix2<double> rho0 = target * target.adjoint();

    const LindbladConfig<double> no_jump_cfg = make_lindblad_config(p, dt, horizon, false);
    double max_td = 0;
    for (const QubitBlockSample<double>& s : no_jump_qubit_dynamics(rho0, no_jump_cfg)) {
      const State psi = evolve(target, p, s.t, true);
      const DensityMatrix2<double> ref = psi * psi.adjoint();
      max_td = std::max(max_td, trace_distance(s.rho, ref));
    }

    const LindbladConfig<double> jump_cfg = make_lindblad_config(p, dt, horizon, true);
    DensityMatrix3<double> rho3 = DensityMatrix3<double>::Zero();
    rho3.topLeftCorner<2, 2>() = rho0;
    double drift = 0;
    double min_eig = 1;
    for (const MasterSample<double>& s : integrate_master(rho3, jump_cfg)) {
      drift = std::max(drift, std::abs(s.rho.trace().real() - 1.0));
      min_eig = std::min(min_eig, min_eigenvalue(s.rho));
    }

    const bool pass = max_td <= cfg.tol_trace_distance && drift <= cfg.tol_trace_drift &&
                      min_eig >= -cfg.tol_positivity;
    all_pass = all_pass && pass;
    w.numeric_row({r, max_td, drift, min_eig, pass ? 1.0 : 0.0});
  }
  return all_pass ? 0 : 2;
}

int cmd_shots(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  w.comment("rng: splitmix64");
  w.comment("model: shot noise only; drift and preparation/readout errors are not modeled");
  const double r = effective_gamma_ratio(cfg);
  const Params p = make_params(cfg.j_khz, r * cfg.j_khz);
  const DichotomicObservable<double> obs = sigma_y_observable<double>();
  const State target = resolve_target(cfg);
  const std::vector<double> taus = cfg.tau_list.empty() ? std::vector<double>{0.8} : cfg.tau_list;
  w.header({"j_tau", "quantity", "estimate", "std_error", "shots", "rounds"});
  for (std::size_t idx = 0; idx < taus.size(); ++idx) {
    const double jt = taus[idx];
    const std::uint64_t sub = substream_seed(cfg.seed, idx);
    char seed_buf[32];
    std::snprintf(seed_buf, sizeof(seed_buf), "0x%016llx",
                  static_cast<unsigned long long>(sub));
    w.comment("substream: index=" + std::to_string(idx) + " seed=" + seed_buf);
    const KnShotResult<double> res = estimate_kn(p, make_schedule(cfg.order, jt / p.j), target,
                                                 obs, cfg.shots, cfg.rounds, sub);
    const auto emit = [&](const ShotEstimate<double>& e) {
      w.row({fmt(jt), e.label, fmt(e.estimate), fmt(e.std_error), std::to_string(e.shots),
             std::to_string(e.rounds)});
    };
    for (const ShotEstimate<double>& e : res.correlators) {
      emit(e);
    }
    emit(res.kn);
  }
  return 0;
}

int cmd_bloch(const RunConfig& cfg, std::ostream& out) {
  CsvWriter w(out);
  write_preamble(w, cfg);
  const double r = effective_gamma_ratio(cfg);
  const Params p = make_params(cfg.j_khz, r * cfg.j_khz);
  const State target = resolve_target(cfg);
  const double horizon_j = cfg.horizon.value_or(2.0);
  const int samples = cfg.samples.value_or(100);
  w.header({"j_t", "x", "y", "z"});
  for (const BlochSample<double>& s : bloch_trajectory(p, target, horizon_j / p.j, samples)) {
    w.numeric_row({s.t * p.j, s.x, s.y, s.z});
  }
  return 0;
}

int run_command(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  if (cfg.command == "k-curve") {
    return cmd_k_curve(cfg, out);
  }
  if (cfg.command == "surface") {
    return cmd_surface(cfg, out);
  }
  if (cfg.command == "bounds") {
    return cmd_bounds(cfg, out);
  }
  if (cfg.command == "optimize") {
    return cmd_optimize(cfg, out);
  }
  if (cfg.command == "lindblad-check") {
    return cmd_lindblad_check(cfg, out);
  }
  if (cfg.command == "shots") {
    return cmd_shots(cfg, out);
  }
  if (cfg.command == "bloch") {
    return cmd_bloch(cfg, out);
  }
  throw ConfigError("unknown command: " + cfg.command);
}

int execute(const RunConfig& cfg) {
  try {
    if (cfg.output.empty()) {
      return run_command(cfg, std::cout);
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      throw IoError("cannot open output file: " + cfg.output);
    }
    const int status = run_command(cfg, out);
    out.flush();
    if (!out) {
      throw IoError("failed writing output file: " + cfg.output);
    }
    return status;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace io
}  // namespace ptlgi
