#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ptlgi/dynamics.hpp"
#include "ptlgi/lgi.hpp"
#include "ptlgi/params.hpp"
#include "ptlgi/types.hpp"

namespace ptlgi {

namespace detail {

// signed second-leg conditionals for a leg of the given duration:
// dplus = P(+|+) - P(-|+), dminus = P(-|-) - P(+|-)
template <typename Scalar>
struct SecondLeg {
  Scalar dplus, dminus;
};

template <typename Scalar>
SecondLeg<Scalar> second_leg(const PtParams<Scalar>& p, Scalar duration,
                             const DichotomicObservable<Scalar>& obs) {
  const QubitMatrix<Scalar> u = propagator_matrix(p, duration);
  SecondLeg<Scalar> out;
  const QubitState<Scalar> from_plus = u * obs.plus;
  const Scalar np = from_plus.squaredNorm();
  if (!(np > Scalar(1e-300))) {
    throw StateAnnihilated("second_leg: leg from + eigenvector annihilated");
  }
  out.dplus = (std::norm(obs.plus.dot(from_plus)) - std::norm(obs.minus.dot(from_plus))) / np;
  const QubitState<Scalar> from_minus = u * obs.minus;
  const Scalar nm = from_minus.squaredNorm();
  if (!(nm > Scalar(1e-300))) {
    throw StateAnnihilated("second_leg: leg from - eigenvector annihilated");
  }
  out.dminus = (std::norm(obs.minus.dot(from_minus)) - std::norm(obs.plus.dot(from_minus))) / nm;
  return out;
}

}  // namespace detail

// evaluates Kn(tau, target) with every tau-dependent propagator hoisted into
// a reusable cache, so sweeping many target states over a fixed tau grid
// costs a few dot products per point instead of fresh matrix exponentials
template <typename Scalar>
class KnEvaluator {
 public:
  struct TauCache {
    Scalar tau;
    std::vector<QubitMatrix<Scalar>> first_leg;  // U((k-1) tau) for k = 2..order-1
    detail::SecondLeg<Scalar> step;              // leg of duration tau
    detail::SecondLeg<Scalar> closing;           // leg of duration (order-1) tau
  };

  KnEvaluator(const PtParams<Scalar>& p, int order, const DichotomicObservable<Scalar>& obs)
      : params_(p), order_(order), obs_(obs) {
    if (order < 3) {
      throw std::invalid_argument("KnEvaluator: order must be >= 3");
    }
  }

  TauCache prepare(Scalar tau) const {
    if (!(tau > Scalar(0)) || !std::isfinite(static_cast<double>(tau))) {
      throw std::invalid_argument("KnEvaluator: tau must be positive and finite");
    }
    TauCache c;
    c.tau = tau;
    c.first_leg.reserve(static_cast<std::size_t>(order_ - 2));
    for (int k = 2; k <= order_ - 1; ++k) {
      c.first_leg.push_back(propagator_matrix(params_, Scalar(k - 1) * tau));
    }
    c.step = detail::second_leg(params_, tau, obs_);
    c.closing = detail::second_leg(params_, Scalar(order_ - 1) * tau, obs_);
    return c;
  }

  // weights wp and wm are the first-measurement probabilities of the target
  // itself, |<+|target>|^2 and |<-|target>|^2 after normalization; callers
  // sweeping one target over many tau points hoist them out of the loop
  Scalar eval(const TauCache& c, const QubitState<Scalar>& target, Scalar wp, Scalar wm) const {
    Scalar k = wp * c.step.dplus + wm * c.step.dminus;
    for (const QubitMatrix<Scalar>& u : c.first_leg) {
      const QubitState<Scalar> first = u * target;
      const Scalar n1 = first.squaredNorm();
      if (!(n1 > Scalar(1e-300))) {
        throw StateAnnihilated("KnEvaluator: first leg annihilated");
      }
      const Scalar p1p = std::norm(obs_.plus.dot(first)) / n1;
      const Scalar p1m = std::norm(obs_.minus.dot(first)) / n1;
      k += p1p * c.step.dplus + p1m * c.step.dminus;
    }
    k -= wp * c.closing.dplus + wm * c.closing.dminus;
    return k;
  }

  Scalar eval(const TauCache& c, const QubitState<Scalar>& target) const {
    detail::require_normalized(target, "KnEvaluator");
    const Scalar n0 = target.squaredNorm();
    const Scalar wp = std::norm(obs_.plus.dot(target)) / n0;
    const Scalar wm = std::norm(obs_.minus.dot(target)) / n0;
    return eval(c, target, wp, wm);
  }

  Scalar at(Scalar tau, const QubitState<Scalar>& target) const {
    return eval(prepare(tau), target);
  }

  const PtParams<Scalar>& params() const { return params_; }
  int order() const { return order_; }
  const DichotomicObservable<Scalar>& observable() const { return obs_; }

 private:
  PtParams<Scalar> params_;
  int order_;
  DichotomicObservable<Scalar> obs_;
};

namespace detail {

// successive parabolic interpolation around grid index idx, maximizing
// sign * f inside the bracket formed by the neighboring grid points; keeps
// the best point seen, so the result never falls below the grid value; a
// boundary index is returned unrefined
template <typename Scalar, typename F>
std::pair<Scalar, Scalar> refine_extremum(F&& f, const std::vector<Scalar>& ts,
                                          const std::vector<Scalar>& vs, std::size_t idx,
                                          int sign, int iters = 24) {
  Scalar best_t = ts[idx];
  Scalar best_g = Scalar(sign) * vs[idx];
  if (idx == 0 || idx + 1 == ts.size()) {
    return {best_t, Scalar(sign) * best_g};
  }
  Scalar a = ts[idx - 1], b = ts[idx], c = ts[idx + 1];
  Scalar fa = Scalar(sign) * vs[idx - 1];
  Scalar fb = Scalar(sign) * vs[idx];
  Scalar fc = Scalar(sign) * vs[idx + 1];
  const Scalar lo = a, hi = c;
  for (int it = 0; it < iters; ++it) {
    const Scalar d1 = (b - a) * (fb - fc);
    const Scalar d2 = (b - c) * (fb - fa);
    const Scalar den = Scalar(2) * (d1 - d2);
    if (den == Scalar(0)) {
      break;
    }
    Scalar t = b - ((b - a) * d1 - (b - c) * d2) / den;
    t = std::min(std::max(t, lo), hi);
    if (t == a || t == b || t == c) {
      break;
    }
    const Scalar ft = Scalar(sign) * f(t);
    if (ft > fb) {
      if (t < b) {
        c = b;
        fc = fb;
      } else {
        a = b;
        fa = fb;
      }
      b = t;
      fb = ft;
    } else {
      if (t < b) {
        a = t;
        fa = ft;
      } else {
        c = t;
        fc = ft;
      }
    }
    if (ft > best_g) {
      best_t = t;
      best_g = ft;
    }
  }
  return {best_t, Scalar(sign) * best_g};
}

}  // namespace detail

// scanned extrema of Kn over one tau period per damping ratio
template <typename Scalar>
struct BoundRecord {
  Scalar gamma_ratio;
  Scalar sup;
  Scalar argmax_j_tau;
  Scalar inf;
  Scalar argmin_j_tau;
  bool domain_capped;
};

template <typename Scalar>
struct BoundCurve {
  int order;
  std::vector<BoundRecord<Scalar>> records;
};

// sup and inf of Kn over the scan domain for each gamma/J ratio: a uniform
// grid over (0, tau_max] followed by one parabolic refinement of each
// extremum; first occurrence wins on exact grid ties, so the reported
// arguments are the smallest extremizing tau
template <typename Scalar>
BoundCurve<Scalar> extremal_bounds(const PtParams<Scalar>& p_base,
                                   const std::vector<Scalar>& gamma_ratios, int order,
                                   const QubitState<Scalar>& target,
                                   const DichotomicObservable<Scalar>& obs,
                                   int scan_points = 2000) {
  if (gamma_ratios.empty()) {
    throw std::invalid_argument("extremal_bounds: need at least one gamma ratio");
  }
  if (scan_points < 3) {
    throw std::invalid_argument("extremal_bounds: need at least 3 scan points");
  }
  BoundCurve<Scalar> curve;
  curve.order = order;
  curve.records.reserve(gamma_ratios.size());
  for (const Scalar r : gamma_ratios) {
    if (!(r >= Scalar(0)) || r > Scalar(0.999) + Scalar(1e-12)) {
      throw std::invalid_argument("extremal_bounds: gamma ratio must lie in [0, 0.999]");
    }
    const PtParams<Scalar> p = make_params(p_base.j, r * p_base.j);
    const TauDomain<Scalar> dom = tau_scan_domain(p);
    const KnEvaluator<Scalar> ev(p, order, obs);
    std::vector<Scalar> taus(static_cast<std::size_t>(scan_points));
    std::vector<Scalar> vals(static_cast<std::size_t>(scan_points));
    std::size_t imax = 0, imin = 0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      taus[i] = dom.tau_max * Scalar(i + 1) / Scalar(scan_points);
      vals[i] = ev.at(taus[i], target);
      if (vals[i] > vals[imax]) {
        imax = i;
      }
      if (vals[i] < vals[imin]) {
        imin = i;
      }
    }
    const auto f = [&](Scalar t) { return ev.at(t, target); };
    const auto [tmx, vmx] = detail::refine_extremum(f, taus, vals, imax, +1);
    const auto [tmn, vmn] = detail::refine_extremum(f, taus, vals, imin, -1);
    curve.records.push_back({r, vmx, tmx * p.j, vmn, tmn * p.j, dom.capped});
  }
  return curve;
}

template <typename Scalar>
BoundCurve<Scalar> extremal_bounds(const PtParams<Scalar>& p_base,
                                   const std::vector<Scalar>& gamma_ratios, int order) {
  const DichotomicObservable<Scalar> obs = sigma_y_observable<Scalar>();
  return extremal_bounds(p_base, gamma_ratios, order, obs.plus, obs);
}

// Kn sampled on a (gamma ratio) x (J tau) grid, rows indexed by ratio
template <typename Scalar>
struct SweepGrid {
  std::vector<Scalar> gamma_ratios;
  std::vector<Scalar> j_taus;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;
  int order;
};

template <typename Scalar>
SweepGrid<Scalar> k_surface(const PtParams<Scalar>& p_base, const std::vector<Scalar>& gamma_ratios,
                            const std::vector<Scalar>& j_taus, int order,
                            const QubitState<Scalar>& target,
                            const DichotomicObservable<Scalar>& obs) {
  if (gamma_ratios.empty() || j_taus.empty()) {
    throw std::invalid_argument("k_surface: axes must be nonempty");
  }
  for (std::size_t i = 0; i < gamma_ratios.size(); ++i) {
    if (!(gamma_ratios[i] >= Scalar(0)) || gamma_ratios[i] >= Scalar(1)) {
      throw std::invalid_argument("k_surface: gamma ratios must lie in [0, 1)");
    }
    if (i > 0 && !(gamma_ratios[i] > gamma_ratios[i - 1])) {
      throw std::invalid_argument("k_surface: gamma ratios must be strictly increasing");
    }
  }
  for (std::size_t j = 0; j < j_taus.size(); ++j) {
    if (!(j_taus[j] > Scalar(0)) || !std::isfinite(static_cast<double>(j_taus[j]))) {
      throw std::invalid_argument("k_surface: J tau values must be positive and finite");
    }
    if (j > 0 && !(j_taus[j] > j_taus[j - 1])) {
      throw std::invalid_argument("k_surface: J tau values must be strictly increasing");
    }
  }
  SweepGrid<Scalar> grid;
  grid.gamma_ratios = gamma_ratios;
  grid.j_taus = j_taus;
  grid.order = order;
  grid.values.resize(static_cast<Eigen::Index>(gamma_ratios.size()),
                     static_cast<Eigen::Index>(j_taus.size()));
  for (std::size_t i = 0; i < gamma_ratios.size(); ++i) {
    const PtParams<Scalar> p = make_params(p_base.j, gamma_ratios[i] * p_base.j);
    const KnEvaluator<Scalar> ev(p, order, obs);
    for (std::size_t j = 0; j < j_taus.size(); ++j) {
      grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          ev.at(j_taus[j] / p_base.j, target);
    }
  }
  return grid;
}

template <typename Scalar>
SweepGrid<Scalar> k_surface(const PtParams<Scalar>& p_base, const std::vector<Scalar>& gamma_ratios,
                            const std::vector<Scalar>& j_taus, int order) {
  const DichotomicObservable<Scalar> obs = sigma_y_observable<Scalar>();
  return k_surface(p_base, gamma_ratios, j_taus, order, obs.plus, obs);
}

// headline bounds in one table: the classical macrorealist range, the
// computed Hermitian extrema, the computed near-exceptional-point extrema,
// and the analytic limiting values the dissipative family approaches
template <typename Scalar>
struct BoundTableRow {
  Scalar k3_min, k3_max, k4_min, k4_max;
};

template <typename Scalar>
struct BoundTable {
  BoundTableRow<Scalar> classical;
  BoundTableRow<Scalar> hermitian;
  BoundTableRow<Scalar> near_ep;
  BoundTableRow<Scalar> claimed_limit;
  Scalar near_ep_ratio;
  std::string caveat;
};

template <typename Scalar>
BoundTable<Scalar> bound_table(const PtParams<Scalar>& p_base) {
  BoundTable<Scalar> table;
  table.classical = {Scalar(-3), Scalar(1), Scalar(-2), Scalar(2)};
  table.claimed_limit = {Scalar(-3), Scalar(3), Scalar(-4), Scalar(4)};
  table.near_ep_ratio = Scalar(1) - Scalar(1e-3);
  const std::vector<Scalar> edges = {Scalar(0), table.near_ep_ratio};
  const BoundCurve<Scalar> b3 = extremal_bounds(p_base, edges, 3);
  const BoundCurve<Scalar> b4 = extremal_bounds(p_base, edges, 4);
  table.hermitian = {b3.records[0].inf, b3.records[0].sup, b4.records[0].inf, b4.records[0].sup};
  table.near_ep = {b3.records[1].inf, b3.records[1].sup, b4.records[1].inf, b4.records[1].sup};
  table.caveat =
      "the K4 lower limit -4 is not approached by the scanned family: the "
      "K4 infimum rises toward about -2.6 as gamma/J approaches 1";
  return table;
}

// Bloch-sphere parametrization of the prepared state,
// (-i e^{-i phi} sin(theta/2), cos(theta/2))
template <typename Scalar>
struct TargetStateParams {
  Scalar theta;
  Scalar phi;
};

template <typename Scalar>
QubitState<Scalar> target_state(const TargetStateParams<Scalar>& angles) {
  const Scalar pi = Scalar(std::numbers::pi_v<double>);
  if (!std::isfinite(static_cast<double>(angles.theta)) || angles.theta < Scalar(0) ||
      angles.theta > pi) {
    throw std::invalid_argument("target_state: theta must lie in [0, pi]");
  }
  if (!std::isfinite(static_cast<double>(angles.phi)) || angles.phi < Scalar(0) ||
      angles.phi >= Scalar(2) * pi) {
    throw std::invalid_argument("target_state: phi must lie in [0, 2 pi)");
  }
  QubitState<Scalar> s;
  s << Complex<Scalar>(0, -1) * std::exp(Complex<Scalar>(0, -angles.phi)) *
           std::sin(angles.theta / Scalar(2)),
      Complex<Scalar>(std::cos(angles.theta / Scalar(2)), 0);
  return s;
}

enum class Objective { maximize, minimize };
enum class TauStrategy { extremize, fixed };

// value of the objective for one prepared state, together with the
// dimensionless time it was attained at
template <typename Scalar>
struct ObjectiveSample {
  Scalar value;
  Scalar j_tau;
};

namespace detail {

// tau extremum over the prepared caches followed by one parabolic
// refinement, mirroring the bounds scan; exact grid ties keep the smallest
// tau because only strict improvements move the incumbent
template <typename Scalar>
ObjectiveSample<Scalar> extremize_over_tau(
    const KnEvaluator<Scalar>& ev, const std::vector<Scalar>& taus,
    const std::vector<typename KnEvaluator<Scalar>::TauCache>& caches,
    const QubitState<Scalar>& target, Objective objective, std::vector<Scalar>& scratch) {
  const int sign = objective == Objective::maximize ? +1 : -1;
  const Scalar n0 = target.squaredNorm();
  if (!(n0 > Scalar(1e-300))) {
    throw StateAnnihilated("extremize_over_tau: target has vanishing norm");
  }
  const Scalar wp = std::norm(ev.observable().plus.dot(target)) / n0;
  const Scalar wm = std::norm(ev.observable().minus.dot(target)) / n0;
  scratch.resize(taus.size());
  std::size_t best_idx = 0;
  Scalar best_g = -std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < caches.size(); ++i) {
    scratch[i] = ev.eval(caches[i], target, wp, wm);
    const Scalar g = Scalar(sign) * scratch[i];
    if (g > best_g) {
      best_g = g;
      best_idx = i;
    }
  }
  const auto f = [&](Scalar t) { return ev.at(t, target); };
  const auto [t_star, v_star] = refine_extremum(f, taus, scratch, best_idx, sign);
  return {v_star, t_star * ev.params().j};
}

}  // namespace detail

template <typename Scalar>
struct OptimizationResult {
  int order;
  Objective objective;
  TauStrategy tau_strategy;
  TargetStateParams<Scalar> best;
  Scalar best_value;
  Scalar best_j_tau;
  std::vector<Scalar> thetas;  // coarse grid, [0, pi] inclusive
  std::vector<Scalar> phis;    // coarse grid, [0, 2 pi) half open
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;  // thetas x phis
};

namespace detail {

template <typename Scalar>
Scalar wrap_phi(Scalar phi) {
  const Scalar two_pi = Scalar(2) * Scalar(std::numbers::pi_v<double>);
  Scalar y = std::fmod(phi, two_pi);
  if (y < Scalar(0)) {
    y += two_pi;
  }
  if (y >= two_pi) {
    y = Scalar(0);
  }
  return y;
}

}  // namespace detail

// single evaluation of the optimization objective at one (theta, phi) pair,
// following the exact code path of the grid search so optimizer results can
// be reproduced independently
template <typename Scalar>
ObjectiveSample<Scalar> evaluate_objective(
    const PtParams<Scalar>& p, int order, Objective objective,
    const TargetStateParams<Scalar>& angles, TauStrategy strategy = TauStrategy::extremize,
    Scalar fixed_j_tau = Scalar(0),
    const DichotomicObservable<Scalar>& obs = sigma_y_observable<Scalar>(),
    int scan_points = 2000) {
  const KnEvaluator<Scalar> ev(p, order, obs);
  const QubitState<Scalar> target = target_state(angles);
  if (strategy == TauStrategy::fixed) {
    if (!(fixed_j_tau > Scalar(0)) || !std::isfinite(static_cast<double>(fixed_j_tau))) {
      throw std::invalid_argument("evaluate_objective: fixed J tau must be positive and finite");
    }
    return {ev.at(fixed_j_tau / p.j, target), fixed_j_tau};
  }
  if (p.phase != PtPhase::symmetric) {
    throw std::domain_error(
        "evaluate_objective: tau extremization needs the PT symmetric phase (gamma < J)");
  }
  if (scan_points < 3) {
    throw std::invalid_argument("evaluate_objective: need at least 3 scan points");
  }
  const TauDomain<Scalar> dom = tau_scan_domain(p);
  std::vector<Scalar> taus(static_cast<std::size_t>(scan_points));
  std::vector<typename KnEvaluator<Scalar>::TauCache> caches;
  caches.reserve(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    taus[i] = dom.tau_max * Scalar(i + 1) / Scalar(scan_points);
    caches.push_back(ev.prepare(taus[i]));
  }
  std::vector<Scalar> scratch;
  return detail::extremize_over_tau(ev, taus, caches, target, objective, scratch);
}

// grid search over prepared states: theta on [0, pi] inclusive, phi on
// [0, 2 pi) half open, each cell scored by the tau extremum of Kn (or by Kn
// at a fixed tau), then one local refinement pass at ten times the grid
// resolution around the incumbent; ties prefer smaller tau, then smaller
// theta, then smaller phi
template <typename Scalar>
OptimizationResult<Scalar> optimize_target_state(
    const PtParams<Scalar>& p, int order, Objective objective, int grid = 201,
    TauStrategy strategy = TauStrategy::extremize, Scalar fixed_j_tau = Scalar(0),
    const DichotomicObservable<Scalar>& obs = sigma_y_observable<Scalar>(),
    int scan_points = 2000) {
  if (grid < 41) {
    throw std::invalid_argument("optimize_target_state: grid must be at least 41");
  }
  const KnEvaluator<Scalar> ev(p, order, obs);
  std::vector<Scalar> taus;
  std::vector<typename KnEvaluator<Scalar>::TauCache> caches;
  Scalar fixed_tau = Scalar(0);
  if (strategy == TauStrategy::extremize) {
    if (p.phase != PtPhase::symmetric) {
      throw std::domain_error(
          "optimize_target_state: tau extremization needs the PT symmetric phase (gamma < J)");
    }
    if (scan_points < 3) {
      throw std::invalid_argument("optimize_target_state: need at least 3 scan points");
    }
    const TauDomain<Scalar> dom = tau_scan_domain(p);
    taus.resize(static_cast<std::size_t>(scan_points));
    caches.reserve(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
      taus[i] = dom.tau_max * Scalar(i + 1) / Scalar(scan_points);
      caches.push_back(ev.prepare(taus[i]));
    }
  } else {
    if (!(fixed_j_tau > Scalar(0)) || !std::isfinite(static_cast<double>(fixed_j_tau))) {
      throw std::invalid_argument(
          "optimize_target_state: fixed J tau must be positive and finite");
    }
    fixed_tau = fixed_j_tau / p.j;
  }

  std::vector<Scalar> scratch;
  const auto cell = [&](const TargetStateParams<Scalar>& angles) -> ObjectiveSample<Scalar> {
    const QubitState<Scalar> target = target_state(angles);
    if (strategy == TauStrategy::fixed) {
      return {ev.at(fixed_tau, target), fixed_j_tau};
    }
    return detail::extremize_over_tau(ev, taus, caches, target, objective, scratch);
  };

  const Scalar pi = Scalar(std::numbers::pi_v<double>);
  const int sign = objective == Objective::maximize ? +1 : -1;
  OptimizationResult<Scalar> result;
  result.order = order;
  result.objective = objective;
  result.tau_strategy = strategy;
  result.thetas.resize(static_cast<std::size_t>(grid));
  result.phis.resize(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    result.thetas[static_cast<std::size_t>(i)] = pi * Scalar(i) / Scalar(grid - 1);
    result.phis[static_cast<std::size_t>(i)] = Scalar(2) * pi * Scalar(i) / Scalar(grid);
  }
  result.values.resize(grid, grid);

  Scalar best_g = -std::numeric_limits<Scalar>::infinity();
  ObjectiveSample<Scalar> best_sample{Scalar(0), Scalar(0)};
  TargetStateParams<Scalar> best_angles{Scalar(0), Scalar(0)};
  const auto consider = [&](const TargetStateParams<Scalar>& angles,
                            const ObjectiveSample<Scalar>& sample) {
    const Scalar g = Scalar(sign) * sample.value;
    if (g > best_g || (g == best_g && sample.j_tau < best_sample.j_tau)) {
      best_g = g;
      best_sample = sample;
      best_angles = angles;
    }
  };

  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const TargetStateParams<Scalar> angles{result.thetas[static_cast<std::size_t>(i)],
                                             result.phis[static_cast<std::size_t>(j)]};
      const ObjectiveSample<Scalar> sample = cell(angles);
      result.values(i, j) = sample.value;
      consider(angles, sample);
    }
  }

  // one refinement pass at 10x resolution around the incumbent cell
  const Scalar dtheta = pi / Scalar(grid - 1);
  const Scalar dphi = Scalar(2) * pi / Scalar(grid);
  std::vector<Scalar> fine_thetas, fine_phis;
  fine_thetas.reserve(21);
  fine_phis.reserve(21);
  for (int k = -10; k <= 10; ++k) {
    const Scalar th = std::min(std::max(best_angles.theta + Scalar(k) * dtheta / Scalar(10),
                                        Scalar(0)),
                               pi);
    fine_thetas.push_back(th);
    fine_phis.push_back(detail::wrap_phi(best_angles.phi + Scalar(k) * dphi / Scalar(10)));
  }
  std::sort(fine_thetas.begin(), fine_thetas.end());
  fine_thetas.erase(std::unique(fine_thetas.begin(), fine_thetas.end()), fine_thetas.end());
  std::sort(fine_phis.begin(), fine_phis.end());
  fine_phis.erase(std::unique(fine_phis.begin(), fine_phis.end()), fine_phis.end());
  for (const Scalar th : fine_thetas) {
    for (const Scalar ph : fine_phis) {
      const TargetStateParams<Scalar> angles{th, ph};
      consider(angles, cell(angles));
    }
  }

  result.best = best_angles;
  result.best_value = best_sample.value;
  result.best_j_tau = best_sample.j_tau;
  return result;
}

}  // namespace ptlgi
