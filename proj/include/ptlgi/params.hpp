#pragma once

#include <cmath>
#include <stdexcept>

#include "ptlgi/types.hpp"

namespace ptlgi {

enum class PtPhase { symmetric, exceptional, broken };

// relative tolerance for classifying gamma = J as the exceptional point
inline constexpr double kEpRelTol = 1e-12;

// coupling J, dissipation gamma, and the derived frequency
// chi = sqrt(J^2 - gamma^2) (principal branch: real for gamma < J, zero at
// the exceptional point, positive imaginary for gamma > J)
template <typename Scalar>
struct PtParams {
  Scalar j;
  Scalar gamma;
  Complex<Scalar> chi;
  PtPhase phase;

  Scalar ratio() const { return gamma / j; }
};

template <typename Scalar>
PtParams<Scalar> make_params(Scalar j, Scalar gamma) {
  if (!(j > Scalar(0)) || !std::isfinite(static_cast<double>(j))) {
    throw std::invalid_argument("make_params: J must be positive and finite");
  }
  if (!(gamma >= Scalar(0)) || !std::isfinite(static_cast<double>(gamma))) {
    throw std::invalid_argument("make_params: gamma must be non-negative and finite");
  }
  PtParams<Scalar> p{j, gamma, Complex<Scalar>(0), PtPhase::exceptional};
  if (std::abs(gamma - j) <= Scalar(kEpRelTol) * j) {
    p.chi = Complex<Scalar>(0);
    p.phase = PtPhase::exceptional;
  } else if (gamma < j) {
    p.chi = Complex<Scalar>(std::sqrt((j - gamma) * (j + gamma)));
    p.phase = PtPhase::symmetric;
  } else {
    p.chi = Complex<Scalar>(Scalar(0), std::sqrt((gamma - j) * (gamma + j)));
    p.phase = PtPhase::broken;
  }
  return p;
}

// dimensionless convention: J = 1, time measured in 1/J
template <typename Scalar>
PtParams<Scalar> params_from_ratio(Scalar gamma_ratio) {
  return make_params(Scalar(1), gamma_ratio);
}

}  // namespace ptlgi
