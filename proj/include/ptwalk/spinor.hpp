#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace ptwalk {

using Complex = std::complex<double>;

// 2x2 operator on the internal (L, R) space, basis L = (1,0)^T, R = (0,1)^T.
using SpinorMatrix = Eigen::Matrix2cd;
using Spinor = Eigen::Vector2cd;

inline const Complex kI{0.0, 1.0};

inline SpinorMatrix sigma0() { return SpinorMatrix::Identity(); }

inline SpinorMatrix sigma1() {
  SpinorMatrix m;
  m << 0, 1, 1, 0;
  return m;
}

inline SpinorMatrix sigma2() {
  SpinorMatrix m;
  m << 0, -kI, kI, 0;
  return m;
}

inline SpinorMatrix sigma3() {
  SpinorMatrix m;
  m << 1, 0, 0, -1;
  return m;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// Principal-branch wrap of a real angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

// Wraps Re(eps) into (-pi, pi], leaving the imaginary part untouched.
inline Complex wrap_quasienergy(Complex eps) {
  return {wrap_angle(eps.real()), eps.imag()};
}

}  // namespace ptwalk
