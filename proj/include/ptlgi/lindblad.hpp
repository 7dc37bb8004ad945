#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ptlgi/dynamics.hpp"

namespace ptlgi {

template <typename Scalar>
struct LindbladConfig {
  PtParams<Scalar> params;
  Scalar dt;
  Scalar horizon;
  bool include_jump = true;
};

template <typename Scalar>
LindbladConfig<Scalar> make_lindblad_config(const PtParams<Scalar>& p, Scalar dt, Scalar horizon,
                                            bool include_jump = true) {
  if (!(dt > Scalar(0)) || !(dt <= Scalar(0.01) / p.j * (Scalar(1) + Scalar(1e-12)))) {
    throw std::invalid_argument("lindblad config: dt must be in (0, 0.01/J]");
  }
  if (!(horizon >= Scalar(0)) || !std::isfinite(static_cast<double>(horizon))) {
    throw std::invalid_argument("lindblad config: T must be >= 0 and finite");
  }
  return {p, dt, horizon, include_jump};
}

// -i[H_C, rho] + L1 rho L1^dag - 1/2 {L1^dag L1, rho} on the three-level
// basis (|0>, |1>, |a>), with H_C = J(|1><0| + |0><1|) and
// L1 = sqrt(4 gamma) |a><1|; include_jump = false drops the L1 rho L1^dag
// (quantum jump) term
template <typename Scalar>
DensityMatrix3<Scalar> lindblad_rhs(const DensityMatrix3<Scalar>& rho, const PtParams<Scalar>& p,
                                    bool include_jump) {
  DensityMatrix3<Scalar> h = DensityMatrix3<Scalar>::Zero();
  h(0, 1) = Complex<Scalar>(p.j);
  h(1, 0) = Complex<Scalar>(p.j);
  DensityMatrix3<Scalar> l = DensityMatrix3<Scalar>::Zero();
  l(2, 1) = Complex<Scalar>(std::sqrt(Scalar(4) * p.gamma));
  const DensityMatrix3<Scalar> n = l.adjoint() * l;
  DensityMatrix3<Scalar> out =
      Complex<Scalar>(0, -1) * (h * rho - rho * h) - Scalar(0.5) * (n * rho + rho * n);
  if (include_jump) {
    out += l * rho * l.adjoint();
  }
  return out;
}

namespace detail {

template <typename Matrix, typename Scalar, typename Rhs>
Matrix rk4_step(const Matrix& y, Scalar h, Rhs&& f) {
  const Matrix k1 = f(y);
  const Matrix k2 = f((y + (h / Scalar(2)) * k1).eval());
  const Matrix k3 = f((y + (h / Scalar(2)) * k2).eval());
  const Matrix k4 = f((y + h * k3).eval());
  return y + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

// fixed-step RK4 over [0, horizon], sampling after every step; the last
// step is shortened to land exactly on the horizon
template <typename Matrix, typename Scalar, typename Rhs, typename Emit>
void integrate_fixed(Matrix y, Scalar dt, Scalar horizon, Rhs&& f, Emit&& emit) {
  emit(Scalar(0), y);
  if (!(horizon > Scalar(0))) return;
  const long full = static_cast<long>(std::floor(static_cast<double>(horizon / dt) + 1e-12));
  for (long k = 1; k <= full; ++k) {
    y = rk4_step(y, dt, f);
    emit(Scalar(k) * dt, y);
  }
  const Scalar remainder = horizon - Scalar(full) * dt;
  if (remainder > dt * Scalar(1e-9)) {
    y = rk4_step(y, remainder, f);
    emit(horizon, y);
  }
}

template <typename Scalar, int N>
void require_density(const Eigen::Matrix<Complex<Scalar>, N, N>& rho, const char* where) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > Scalar(1e-10)) {
    throw std::invalid_argument(std::string(where) + ": density matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - Complex<Scalar>(1)) > Scalar(1e-9)) {
    throw std::invalid_argument(std::string(where) + ": density matrix must have unit trace");
  }
}

}  // namespace detail

template <typename Scalar>
struct MasterSample {
  Scalar t;
  DensityMatrix3<Scalar> rho;
};

template <typename Scalar>
std::vector<MasterSample<Scalar>> integrate_master(const DensityMatrix3<Scalar>& rho0,
                                                   const LindbladConfig<Scalar>& cfg) {
  detail::require_density<Scalar, 3>(rho0, "integrate_master");
  std::vector<MasterSample<Scalar>> out;
  auto f = [&](const DensityMatrix3<Scalar>& r) { return lindblad_rhs(r, cfg.params, cfg.include_jump); };
  detail::integrate_fixed(rho0, cfg.dt, cfg.horizon, f,
                          [&](Scalar t, const DensityMatrix3<Scalar>& r) { out.push_back({t, r}); });
  return out;
}

template <typename Scalar>
struct QubitBlockSample {
  Scalar t;
  DensityMatrix2<Scalar> rho;  // renormalized to unit trace
};

// no-jump (post-selected) qubit dynamics: integrates the linear equation
// d rho/dt = -i (H_eff rho - rho H_eff^dag) and renormalizes by the trace
// at sample times only, never inside RK4 stages
template <typename Scalar>
std::vector<QubitBlockSample<Scalar>> no_jump_qubit_dynamics(const DensityMatrix2<Scalar>& rho0,
                                                             const LindbladConfig<Scalar>& cfg) {
  detail::require_density<Scalar, 2>(rho0, "no_jump_qubit_dynamics");
  const DensityMatrix2<Scalar> h = effective_hamiltonian(cfg.params);
  const DensityMatrix2<Scalar> h_dag = h.adjoint();
  auto f = [&](const DensityMatrix2<Scalar>& r) {
    return (Complex<Scalar>(0, -1) * (h * r - r * h_dag)).eval();
  };
  std::vector<QubitBlockSample<Scalar>> out;
  detail::integrate_fixed(rho0, cfg.dt, cfg.horizon, f,
                          [&](Scalar t, const DensityMatrix2<Scalar>& r) {
                            const Scalar tr = r.trace().real();
                            if (!(tr > Scalar(1e-300))) {
                              throw StateAnnihilated("no_jump_qubit_dynamics: trace underflowed");
                            }
                            out.push_back({t, (r / tr).eval()});
                          });
  return out;
}

// trace-preserving generator of the renormalized no-jump evolution:
// -i (H_eff rho - rho H_eff^dag) + 2 gamma (1 - <z>) rho with
// <z> = Tr(sigma_z rho), sigma_z = diag(1, -1)
template <typename Scalar>
DensityMatrix2<Scalar> nonlinear_bloch_rhs(const DensityMatrix2<Scalar>& rho,
                                           const PtParams<Scalar>& p) {
  if (std::abs(rho.trace() - Complex<Scalar>(1)) > Scalar(1e-9)) {
    throw std::invalid_argument("nonlinear_bloch_rhs: trace must be 1");
  }
  const DensityMatrix2<Scalar> h = effective_hamiltonian(p);
  const Scalar z = (rho(0, 0) - rho(1, 1)).real();
  DensityMatrix2<Scalar> out = Complex<Scalar>(0, -1) * (h * rho - rho * h.adjoint());
  out += (Scalar(2) * p.gamma * (Scalar(1) - z)) * rho;
  return out;
}

// 1/2 sum of singular values of the difference
template <typename Scalar, int N>
Scalar trace_distance(const Eigen::Matrix<Complex<Scalar>, N, N>& a,
                      const Eigen::Matrix<Complex<Scalar>, N, N>& b) {
  Eigen::JacobiSVD<Eigen::Matrix<Complex<Scalar>, N, N>> svd(a - b);
  return svd.singularValues().sum() / Scalar(2);
}

template <typename Scalar, int N>
Scalar min_eigenvalue(const Eigen::Matrix<Complex<Scalar>, N, N>& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex<Scalar>, N, N>> es(rho,
                                                                         Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace ptlgi
