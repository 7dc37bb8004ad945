#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace ptlgi {

template <typename Scalar>
using Complex = std::complex<Scalar>;

// basis ordering is fixed as (|0>, |1>)
template <typename Scalar>
using QubitState = Eigen::Matrix<Complex<Scalar>, 2, 1>;

template <typename Scalar>
using QubitMatrix = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using DensityMatrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

// three-level basis ordering (|0>, |1>, |a>)
template <typename Scalar>
using DensityMatrix3 = Eigen::Matrix<Complex<Scalar>, 3, 3>;

template <typename Scalar>
QubitState<Scalar> ket0() {
  return QubitState<Scalar>(Complex<Scalar>(1), Complex<Scalar>(0));
}

template <typename Scalar>
QubitState<Scalar> ket1() {
  return QubitState<Scalar>(Complex<Scalar>(0), Complex<Scalar>(1));
}

template <typename Scalar>
QubitMatrix<Scalar> sigma_x() {
  QubitMatrix<Scalar> m;
  m << Complex<Scalar>(0), Complex<Scalar>(1), Complex<Scalar>(1), Complex<Scalar>(0);
  return m;
}

template <typename Scalar>
QubitMatrix<Scalar> sigma_y() {
  QubitMatrix<Scalar> m;
  m << Complex<Scalar>(0), Complex<Scalar>(0, -1), Complex<Scalar>(0, 1), Complex<Scalar>(0);
  return m;
}

template <typename Scalar>
QubitMatrix<Scalar> sigma_z() {
  QubitMatrix<Scalar> m;
  m << Complex<Scalar>(1), Complex<Scalar>(0), Complex<Scalar>(0), Complex<Scalar>(-1);
  return m;
}

// thrown when a conditional norm (or trace) underflows and renormalization
// is impossible
class StateAnnihilated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptlgi
