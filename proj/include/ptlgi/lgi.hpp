#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptlgi/dynamics.hpp"

namespace ptlgi {

// +/-1-valued observable given by its orthonormal eigenvectors
template <typename Scalar>
struct DichotomicObservable {
  QubitState<Scalar> plus;
  QubitState<Scalar> minus;
};

template <typename Scalar>
DichotomicObservable<Scalar> make_observable(const QubitState<Scalar>& plus,
                                             const QubitState<Scalar>& minus) {
  if (std::abs(plus.norm() - Scalar(1)) > Scalar(1e-12) ||
      std::abs(minus.norm() - Scalar(1)) > Scalar(1e-12) ||
      std::abs(plus.dot(minus)) > Scalar(1e-12)) {
    throw std::invalid_argument("make_observable: eigenvectors must be orthonormal");
  }
  return {plus, minus};
}

// default observable: sigma_y with the +1 outcome attached to
// |+> = (i, 1)/sqrt(2) and the -1 outcome to |-> = (-i, 1)/sqrt(2)
template <typename Scalar>
DichotomicObservable<Scalar> sigma_y_observable() {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  return {QubitState<Scalar>(Complex<Scalar>(0, r), Complex<Scalar>(r)),
          QubitState<Scalar>(Complex<Scalar>(0, -r), Complex<Scalar>(r))};
}

// four two-time outcome probabilities, labeled (outcome at t_i, outcome at
// t_i + t_ji)
template <typename Scalar>
struct JointDistribution {
  Scalar pp, pm, mp, mm;

  Scalar sum() const { return pp + pm + mp + mm; }
};

// conditional two-time joint probabilities of the post-selected protocol:
// each leg evolves under exp(-i H_eff t) and is renormalized by the
// survival norm of that leg
template <typename Scalar>
JointDistribution<Scalar> joint_probabilities(const QubitState<Scalar>& target,
                                              const PtParams<Scalar>& p, Scalar t_i, Scalar t_ji,
                                              const DichotomicObservable<Scalar>& obs) {
  detail::require_normalized(target, "joint_probabilities");
  const QubitState<Scalar> first = propagator_matrix(p, t_i) * target;
  const Scalar n1 = first.squaredNorm();
  if (!(n1 > Scalar(1e-300))) {
    throw StateAnnihilated("joint_probabilities: first leg annihilated");
  }
  const Scalar p1_plus = std::norm(obs.plus.dot(first)) / n1;
  const Scalar p1_minus = std::norm(obs.minus.dot(first)) / n1;

  const QubitMatrix<Scalar> u2 = propagator_matrix(p, t_ji);
  Scalar cond[2][2];
  const QubitState<Scalar>* eig[2] = {&obs.plus, &obs.minus};
  for (int a = 0; a < 2; ++a) {
    const QubitState<Scalar> second = u2 * (*eig[a]);
    const Scalar n2 = second.squaredNorm();
    if (!(n2 > Scalar(1e-300))) {
      throw StateAnnihilated("joint_probabilities: second leg annihilated");
    }
    cond[a][0] = std::norm(obs.plus.dot(second)) / n2;
    cond[a][1] = std::norm(obs.minus.dot(second)) / n2;
  }
  return {p1_plus * cond[0][0], p1_plus * cond[0][1], p1_minus * cond[1][0],
          p1_minus * cond[1][1]};
}

template <typename Scalar>
Scalar correlation(const JointDistribution<Scalar>& d) {
  return d.pp - d.pm - d.mp + d.mm;
}

// equally spaced measurement times t_k = (k-1) tau, k = 1..order
template <typename Scalar>
struct CorrelationSchedule {
  int order;
  Scalar tau;
};

template <typename Scalar>
CorrelationSchedule<Scalar> make_schedule(int order, Scalar tau) {
  if (order < 3) {
    throw std::invalid_argument("make_schedule: order must be >= 3");
  }
  if (!(tau > Scalar(0)) || !std::isfinite(static_cast<double>(tau))) {
    throw std::invalid_argument("make_schedule: tau must be positive and finite");
  }
  return {order, tau};
}

template <typename Scalar>
struct LgiComponent {
  int i, j;  // the correlator C_ij, i > j
  Scalar value;
};

template <typename Scalar>
struct LgiValue {
  int order;
  Scalar value;
  std::vector<LgiComponent<Scalar>> components;  // C21 .. C_{n,n-1}, then C_{n,1}
};

// Kn = C21 + C32 + ... + C_{n,n-1} - C_{n,1} with the first measurement at
// t = 0 (preparation counts as the first measurement)
template <typename Scalar>
LgiValue<Scalar> k_n(const PtParams<Scalar>& p, const CorrelationSchedule<Scalar>& sched,
                     const QubitState<Scalar>& target, const DichotomicObservable<Scalar>& obs) {
  if (sched.order < 3 || !(sched.tau > Scalar(0))) {
    throw std::invalid_argument("k_n: schedule must have order >= 3 and tau > 0");
  }
  LgiValue<Scalar> out;
  out.order = sched.order;
  out.value = Scalar(0);
  out.components.reserve(static_cast<std::size_t>(sched.order));
  for (int k = 1; k <= sched.order - 1; ++k) {
    const Scalar t_k = Scalar(k - 1) * sched.tau;
    const Scalar c = correlation(joint_probabilities(target, p, t_k, sched.tau, obs));
    out.components.push_back({k + 1, k, c});
    out.value += c;
  }
  const Scalar closing =
      correlation(joint_probabilities(target, p, Scalar(0), Scalar(sched.order - 1) * sched.tau, obs));
  out.components.push_back({sched.order, 1, closing});
  out.value -= closing;
  return out;
}

template <typename Scalar>
LgiValue<Scalar> k_n(const PtParams<Scalar>& p, const CorrelationSchedule<Scalar>& sched) {
  const DichotomicObservable<Scalar> obs = sigma_y_observable<Scalar>();
  return k_n(p, sched, obs.plus, obs);
}

template <typename Scalar>
Scalar k3_hermitian_closed(Scalar j_tau) {
  return Scalar(2) * std::cos(Scalar(2) * j_tau) - std::cos(Scalar(4) * j_tau);
}

template <typename Scalar>
Scalar k4_hermitian_closed(Scalar j_tau) {
  return Scalar(3) * std::cos(Scalar(2) * j_tau) - std::cos(Scalar(6) * j_tau);
}

namespace detail {

template <typename Scalar>
Scalar require_symmetric_chi(const PtParams<Scalar>& p, const char* where) {
  if (p.phase != PtPhase::symmetric) {
    throw std::domain_error(std::string(where) + ": closed form requires gamma < J");
  }
  return p.chi.real();
}

}  // namespace detail

// closed-form K3 for the dissipative case, transcribed as printed; see
// cross_validate for how it compares against the numerical path
template <typename Scalar>
Scalar k3_pt_closed(const PtParams<Scalar>& p, Scalar tau) {
  const Scalar chi = detail::require_symmetric_chi(p, "k3_pt_closed");
  if (!(tau > Scalar(0))) {
    throw std::invalid_argument("k3_pt_closed: tau must be > 0");
  }
  const Scalar j = p.j, g = p.gamma;
  const Scalar c2 = std::cos(2 * tau * chi);
  const Scalar c4 = std::cos(4 * tau * chi);
  const Scalar t1 = (g + j * c2) / (j + g * c2);
  const Scalar t2 = (g + j * c4) / (j + g * c4);
  const Scalar den = (j - g * c2) * (j + g * c2) * (j + g * c2);
  const Scalar t3 = (j * g * g + j * (j * j + j * g - g * g) * c2) / den;
  const Scalar t4 = (g * c2 * (-j * j + j * g + g * g + j * j * c2)) / den;
  return t1 - t2 + t3 - t4;
}

// closed-form K4, transcribed as printed (the fourth denominator
// gamma^2 - 2 J^2 + gamma^2 cos(4 tau chi) is strictly negative for
// gamma < J, so nothing blows up in the symmetric phase)
template <typename Scalar>
Scalar k4_pt_closed(const PtParams<Scalar>& p, Scalar tau) {
  const Scalar chi = detail::require_symmetric_chi(p, "k4_pt_closed");
  if (!(tau > Scalar(0))) {
    throw std::invalid_argument("k4_pt_closed: tau must be > 0");
  }
  const Scalar j = p.j, g = p.gamma;
  const Scalar chi2 = chi * chi;
  const Scalar c2 = std::cos(2 * tau * chi);
  const Scalar c4 = std::cos(4 * tau * chi);
  const Scalar c6 = std::cos(6 * tau * chi);
  const Scalar c8 = std::cos(8 * tau * chi);
  const Scalar ct = std::cos(tau * chi);
  const Scalar st = std::sin(tau * chi);
  const Scalar t1 = (g + j * c2) / (j + g * c2);
  const Scalar t2 = (g + j * c6) / (j + g * c6);
  const Scalar t3 = (g + j) * ct * ct * (g + j * c2) / ((j + g * c2) * (j + g * c2));
  const Scalar t4 = 2 * (j - g) * st * st * (j * c2 - g) / (g * g - 2 * j * j + g * g * c4);
  const Scalar t5_num = 2 * (-g * g * g + 2 * j * j * j + g * j * j - 2 * g * g * j) * c2 +
                        g * (2 * j * (j - g) * c4 - j * (-2 * g + j * c8 + j) + 2 * chi2 * c6);
  const Scalar t5_den = 4 * (j - g * c2) * (j + g * c2) * (j + g * c4);
  return t1 - t2 + t3 - t4 + t5_num / t5_den;
}

template <typename Scalar>
struct ClosedCorrelators {
  Scalar c21, c31, c41, c32, c43;
};

// the five closed-form correlators, transcribed as printed
template <typename Scalar>
ClosedCorrelators<Scalar> correlators_closed(const PtParams<Scalar>& p, Scalar tau) {
  const Scalar chi = detail::require_symmetric_chi(p, "correlators_closed");
  if (!(tau > Scalar(0))) {
    throw std::invalid_argument("correlators_closed: tau must be > 0");
  }
  const Scalar j = p.j, g = p.gamma;
  const Scalar c2 = std::cos(2 * tau * chi);
  const Scalar c4 = std::cos(4 * tau * chi);
  const Scalar c6 = std::cos(6 * tau * chi);
  const Scalar c8 = std::cos(8 * tau * chi);
  ClosedCorrelators<Scalar> out;
  out.c21 = (g + j * c2) / (j + g * c2);
  out.c31 = (g + j * c4) / (j + g * c4);
  out.c41 = (g + j * c6) / (j + g * c6);
  const Scalar den32 = (j - g * c2) * (j + g * c2) * (j + g * c2);
  out.c32 = ((j * g * g + j * (j * j + j * g - g * g) * c2) -
             (g * c2 * (-j * j + j * g + g * g + j * j * c2))) / den32;
  const Scalar den43 = 4 * (j * j - g * g * c2 * c2) * (g * c4 + j);
  out.c43 = (2 * (j * j - g * g) * (g + 2 * j) * c2 +
             g * (2 * j * (j - g) * c4 + 2 * (j * j - g * g) * c6 - j * (-2 * g + j * c8 + j))) /
            den43;
  return out;
}

// tau domain covering one full period of every correlator: all trig
// arguments are multiples of 2 tau chi, so the period in tau is pi/chi;
// near and beyond the exceptional point the period diverges and the scan
// is capped (default J tau <= 50)
template <typename Scalar>
struct TauDomain {
  Scalar tau_max;
  bool capped;
};

template <typename Scalar>
TauDomain<Scalar> tau_scan_domain(const PtParams<Scalar>& p, Scalar j_tau_cap = Scalar(50)) {
  const Scalar cap = j_tau_cap / p.j;
  if (p.phase != PtPhase::symmetric) {
    return {cap, true};
  }
  const Scalar period = Scalar(std::numbers::pi_v<double>) / p.chi.real();
  if (period > cap) {
    return {cap, true};
  }
  return {period, false};
}

// cross-validation of the closed forms against the joint-probability path
// (the numerical oracle); on disagreement the report records the maximal
// discrepancy and its location, and the oracle is treated as authoritative
template <typename Scalar>
struct CrossValidationEntry {
  std::string quantity;
  Scalar max_abs_diff = Scalar(0);
  Scalar at_gamma_ratio = Scalar(0);
  Scalar at_j_tau = Scalar(0);
  Scalar closed_value = Scalar(0);
  Scalar oracle_value = Scalar(0);
};

template <typename Scalar>
struct CrossValidationReport {
  Scalar tolerance;
  std::vector<CrossValidationEntry<Scalar>> entries;  // C21, C31, C41, C32, C43, K3, K4
  bool oracle_ok = true;
  std::string oracle_violation;

  bool all_within_tolerance() const {
    for (const auto& e : entries) {
      if (!(e.max_abs_diff <= tolerance)) return false;
    }
    return true;
  }
};

template <typename Scalar>
CrossValidationReport<Scalar> cross_validate(const PtParams<Scalar>& p_base,
                                             const std::vector<Scalar>& gamma_ratios,
                                             int tau_points, Scalar tolerance = Scalar(1e-8)) {
  if (tau_points < 1) {
    throw std::invalid_argument("cross_validate: tau_points must be >= 1");
  }
  CrossValidationReport<Scalar> report;
  report.tolerance = tolerance;
  const char* names[7] = {"C21", "C31", "C41", "C32", "C43", "K3", "K4"};
  report.entries.resize(7);
  for (int q = 0; q < 7; ++q) report.entries[q].quantity = names[q];

  const DichotomicObservable<Scalar> obs = sigma_y_observable<Scalar>();
  const QubitState<Scalar> target = obs.plus;

  auto note_violation = [&](const std::string& what, Scalar g, Scalar j_tau) {
    if (report.oracle_ok) {
      report.oracle_ok = false;
      report.oracle_violation = what + " at gamma_ratio=" + std::to_string(static_cast<double>(g)) +
                                ", J*tau=" + std::to_string(static_cast<double>(j_tau));
    }
  };

  for (const Scalar g : gamma_ratios) {
    const PtParams<Scalar> p = make_params(p_base.j, g * p_base.j);
    if (p.phase != PtPhase::symmetric) {
      throw std::invalid_argument("cross_validate: gamma ratios must satisfy gamma < J");
    }
    const TauDomain<Scalar> dom = tau_scan_domain(p);
    for (int i = 1; i <= tau_points; ++i) {
      const Scalar tau = dom.tau_max * Scalar(i) / Scalar(tau_points);
      const Scalar j_tau = tau * p.j;

      // oracle values, with the oracle's own invariants checked as we go
      Scalar oracle[7];
      const std::pair<Scalar, Scalar> legs[5] = {
          {Scalar(0), tau}, {Scalar(0), 2 * tau}, {Scalar(0), 3 * tau}, {tau, tau}, {2 * tau, tau}};
      for (int q = 0; q < 5; ++q) {
        const JointDistribution<Scalar> d =
            joint_probabilities(target, p, legs[q].first, legs[q].second, obs);
        const Scalar cells[4] = {d.pp, d.pm, d.mp, d.mm};
        for (const Scalar c : cells) {
          if (c < Scalar(-1e-12) || c > Scalar(1) + Scalar(1e-12)) {
            note_violation("joint probability outside [0,1]", g, j_tau);
          }
        }
        if (std::abs(d.sum() - Scalar(1)) > Scalar(1e-10)) {
          note_violation("joint probabilities do not sum to 1", g, j_tau);
        }
        oracle[q] = correlation(d);
        if (std::abs(oracle[q]) > Scalar(1) + Scalar(1e-10)) {
          note_violation("correlator outside [-1,1]", g, j_tau);
        }
      }
      oracle[5] = oracle[0] + oracle[3] - oracle[1];              // K3
      oracle[6] = oracle[0] + oracle[3] + oracle[4] - oracle[2];  // K4

      const ClosedCorrelators<Scalar> cc = correlators_closed(p, tau);
      const Scalar closed[7] = {cc.c21, cc.c31, cc.c41,      cc.c32,
                                cc.c43, k3_pt_closed(p, tau), k4_pt_closed(p, tau)};
      for (int q = 0; q < 7; ++q) {
        const Scalar diff = std::abs(closed[q] - oracle[q]);
        if (diff > report.entries[q].max_abs_diff) {
          report.entries[q].max_abs_diff = diff;
          report.entries[q].at_gamma_ratio = g;
          report.entries[q].at_j_tau = j_tau;
          report.entries[q].closed_value = closed[q];
          report.entries[q].oracle_value = oracle[q];
        }
      }
    }
  }
  return report;
}

}  // namespace ptlgi
