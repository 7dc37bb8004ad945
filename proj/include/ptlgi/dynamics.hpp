#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptlgi/params.hpp"
#include "ptlgi/types.hpp"

namespace ptlgi {

// H_eff = [[0, J], [J, -2i*gamma]]: coherent coupling J with dissipation
// acting on |1>
template <typename Scalar>
QubitMatrix<Scalar> effective_hamiltonian(const PtParams<Scalar>& p) {
  QubitMatrix<Scalar> h;
  h << Complex<Scalar>(0), Complex<Scalar>(p.j),
      Complex<Scalar>(p.j), Complex<Scalar>(0, -2 * p.gamma);
  return h;
}

// H_PT = H_eff + i*gamma*I = [[i*gamma, J], [J, -i*gamma]]; squares to
// chi^2 * I, which reduces the matrix exponential to two trig terms
template <typename Scalar>
QubitMatrix<Scalar> pt_generator(const PtParams<Scalar>& p) {
  QubitMatrix<Scalar> h;
  h << Complex<Scalar>(0, p.gamma), Complex<Scalar>(p.j),
      Complex<Scalar>(p.j), Complex<Scalar>(0, -p.gamma);
  return h;
}

template <typename Scalar>
struct QubitPropagator {
  QubitMatrix<Scalar> matrix;
  Scalar duration;
};

// exp(-i H_eff t) = e^{-gamma t} (cos(chi t) I - i sin(chi t)/chi H_PT),
// valid in all phases; the sin(chi t)/chi factor switches to its power
// series near chi t = 0 so the exceptional point needs no special case
template <typename Scalar>
QubitMatrix<Scalar> propagator_matrix(const PtParams<Scalar>& p, Scalar t) {
  if (!std::isfinite(static_cast<double>(t)) || !(t >= Scalar(0))) {
    throw std::invalid_argument("propagator: t must be finite and >= 0");
  }
  const Complex<Scalar> z = p.chi * t;
  Complex<Scalar> sinc_chi;
  if (std::abs(z) < Scalar(1e-4)) {
    // t (1 - z^2/6 + z^4/120); relative error below 1e-20 at the threshold
    const Complex<Scalar> z2 = z * z;
    sinc_chi = t * (Scalar(1) - z2 / Scalar(6) + z2 * z2 / Scalar(120));
  } else {
    sinc_chi = std::sin(z) / p.chi;
  }
  QubitMatrix<Scalar> u =
      std::cos(z) * QubitMatrix<Scalar>::Identity() - Complex<Scalar>(0, 1) * sinc_chi * pt_generator(p);
  u *= Complex<Scalar>(std::exp(-p.gamma * t));
  return u;
}

template <typename Scalar>
QubitPropagator<Scalar> propagator(const PtParams<Scalar>& p, Scalar t) {
  return {propagator_matrix(p, t), t};
}

namespace detail {

template <typename Scalar>
void require_normalized(const QubitState<Scalar>& state, const char* where) {
  if (std::abs(state.norm() - Scalar(1)) > Scalar(1e-9)) {
    throw std::invalid_argument(std::string(where) + ": state must be normalized");
  }
}

}  // namespace detail

// applies exp(-i H_eff t); with renormalize the result is the conditional
// (post-selected, no-decay) state, otherwise the raw decayed vector
template <typename Scalar>
QubitState<Scalar> evolve(const QubitState<Scalar>& state, const PtParams<Scalar>& p, Scalar t,
                          bool renormalize) {
  if (!(state.norm() > Scalar(0))) {
    throw std::invalid_argument("evolve: state must have nonzero norm");
  }
  QubitState<Scalar> out = propagator_matrix(p, t) * state;
  if (renormalize) {
    const Scalar n = out.norm();
    if (!(n > Scalar(1e-300))) {
      throw StateAnnihilated("evolve: evolved norm underflowed, cannot renormalize");
    }
    out /= n;
  }
  return out;
}

// squared norm of the raw decayed state: the probability weight of the
// no-decay branch, and the normalization denominator of conditional
// probabilities
template <typename Scalar>
Scalar survival_norm(const QubitState<Scalar>& state, const PtParams<Scalar>& p, Scalar t) {
  detail::require_normalized(state, "survival_norm");
  return (propagator_matrix(p, t) * state).squaredNorm();
}

// N+1 renormalized states at t_k = k T / N, re-preparing the predicted state
// at every segment boundary; the endpoint coincides with continuous
// renormalized evolution because the flow is linear
template <typename Scalar>
std::vector<QubitState<Scalar>> piecewise_evolve(const PtParams<Scalar>& p, Scalar total_time,
                                                 int segments, const QubitState<Scalar>& state0) {
  if (segments < 1) {
    throw std::invalid_argument("piecewise_evolve: N must be >= 1");
  }
  if (!(total_time > Scalar(0))) {
    throw std::invalid_argument("piecewise_evolve: T must be > 0");
  }
  detail::require_normalized(state0, "piecewise_evolve");
  const QubitMatrix<Scalar> u = propagator_matrix(p, total_time / Scalar(segments));
  std::vector<QubitState<Scalar>> states;
  states.reserve(static_cast<std::size_t>(segments) + 1);
  states.push_back(state0);
  for (int k = 0; k < segments; ++k) {
    QubitState<Scalar> next = u * states.back();
    const Scalar n = next.norm();
    if (!(n > Scalar(1e-300))) {
      throw StateAnnihilated("piecewise_evolve: segment norm underflowed");
    }
    states.push_back(next / n);
  }
  return states;
}

template <typename Scalar>
struct BlochSample {
  Scalar t;
  Scalar x, y, z;
};

// Bloch components Tr(sigma_k rho) of the renormalized pure state at
// uniformly spaced times, with sigma_z = diag(1, -1) on (|0>, |1>)
template <typename Scalar>
std::vector<BlochSample<Scalar>> bloch_trajectory(const PtParams<Scalar>& p,
                                                  const QubitState<Scalar>& state0,
                                                  Scalar total_time, int samples) {
  if (samples < 2) {
    throw std::invalid_argument("bloch_trajectory: need at least 2 samples");
  }
  if (!(total_time >= Scalar(0))) {
    throw std::invalid_argument("bloch_trajectory: T must be >= 0");
  }
  detail::require_normalized(state0, "bloch_trajectory");
  std::vector<BlochSample<Scalar>> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const Scalar t = total_time * Scalar(k) / Scalar(samples - 1);
    const QubitState<Scalar> psi = evolve(state0, p, t, true);
    const Complex<Scalar> cross = std::conj(psi(0)) * psi(1);
    out.push_back({t, Scalar(2) * cross.real(), Scalar(2) * cross.imag(),
                   std::norm(psi(0)) - std::norm(psi(1))});
  }
  return out;
}

}  // namespace ptlgi
