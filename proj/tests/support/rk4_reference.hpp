#pragma once

// independent reference integrator for the Schrodinger equation
// d psi / dt = -i H psi with H = [[0, J], [J, -2 i gamma]]; deliberately
// built from scratch (no project headers) so it can arbitrate the closed
// propagator

#include <complex>

#include <Eigen/Dense>

namespace rk4ref {

using Cx = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline Vec2 rhs(const Vec2& psi, double j, double gamma) {
  Mat2 h;
  h << Cx(0, 0), Cx(j, 0), Cx(j, 0), Cx(0, -2 * gamma);
  return Cx(0, -1) * (h * psi);
}

inline Vec2 rk4_state(const Vec2& psi0, double j, double gamma, double t, double dt = 1e-3) {
  Vec2 y = psi0;
  double remaining = t;
  while (remaining > 0) {
    const double h = remaining < dt ? remaining : dt;
    const Vec2 k1 = rhs(y, j, gamma);
    const Vec2 k2 = rhs(y + (h / 2) * k1, j, gamma);
    const Vec2 k3 = rhs(y + (h / 2) * k2, j, gamma);
    const Vec2 k4 = rhs(y + h * k3, j, gamma);
    y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    remaining -= h;
  }
  return y;
}

}  // namespace rk4ref
