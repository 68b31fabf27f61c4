#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "ptwalk/operators.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/spinor.hpp"

namespace ptwalk {

// Closed-form band data at one wave number. eps_plus carries Re in [0, pi]
// (principal arccos); eps_minus = -eps_plus wrapped into (-pi, pi]. xi is
// real exactly when d2^2 <= d1^2 + d3^2; eta is always real.
struct DispersionPoint {
  double k = 0.0;
  Complex eps_plus;
  Complex eps_minus;
  double eta = 0.0;
  Complex xi;
  double d1 = 0.0;
  double d2 = 0.0;  // evaluated on the +2*gamma branch
  double d3 = 0.0;
  double d_norm = 0.0;  // |d3 + i d1|
};

namespace detail {

inline std::array<double, 3> band_vector(double k, const HomogeneousParams& p) {
  const double big_k = k + p.phi;
  const double d1 = std::sin(p.theta1) * std::cos(p.theta2) * std::cos(2 * big_k) +
                    std::cos(p.theta1) * std::sin(p.theta2) * std::cosh(2 * p.gamma);
  const double d2 = -std::sin(p.theta2) * std::sinh(2 * p.gamma);
  const double d3 = -std::cos(p.theta2) * std::sin(2 * big_k);
  return {d1, d2, d3};
}

inline Complex principal_acos(double x) {
  if (x > 1.0) return Complex{0.0, std::acosh(x)};
  if (x < -1.0) return Complex{M_PI, -std::acosh(-x)};
  return Complex{std::acos(x), 0.0};
}

}  // namespace detail

inline DispersionPoint dispersion(double k, const HomogeneousParams& p) {
  validate(p);
  DispersionPoint out;
  out.k = k;
  const auto [d1, d2, d3] = detail::band_vector(k, p);
  out.d1 = d1;
  out.d2 = d2;
  out.d3 = d3;
  out.d_norm = std::hypot(d1, d3);
  const double rhs = std::cos(p.theta1) * std::cos(p.theta2) * std::cos(2 * (k + p.phi)) -
                     std::sin(p.theta1) * std::sin(p.theta2) * std::cosh(2 * p.gamma);
  out.eps_plus = detail::principal_acos(rhs);
  out.eps_minus = wrap_quasienergy(-out.eps_plus);
  out.eta = 0.5 * std::atan2(d1, d3);
  // e^{2 i xi} = (sin eps_+ + i d2)/|d|: pins both sin(2 xi) = d2/|d| and
  // cos(2 xi) = sin(eps_+)/|d| on the same branch as eps_+.
  if (out.d_norm > 0.0) {
    const Complex z = (std::sin(out.eps_plus) + kI * d2) / out.d_norm;
    out.xi = -0.5 * kI * std::log(z);
  } else {
    out.xi = d2 == 0.0 ? Complex{0.0, 0.0} : Complex{M_PI / 4, -350.0};
  }
  return out;
}

// Gain factor e^{gamma*} at which the band edge touches eps = 0.
inline double exceptional_gamma(double theta1, double theta2) {
  if (!std::isfinite(theta1) || !std::isfinite(theta2))
    throw InvalidParameter("coin angles must be finite");
  const double denom = std::sin(theta1) * std::sin(theta2);
  if (denom == 0.0)
    throw NoExceptionalPoint("sin(theta1) sin(theta2) vanishes");
  const double arg = (std::cos(theta1) * std::cos(theta2) - 1.0) / denom;
  if (arg < 1.0)
    throw NoExceptionalPoint("cosh(2 gamma*) argument below 1; band edge never reaches eps=0");
  return std::exp(std::acosh(arg) / 2.0);
}

namespace detail {

// Analytic eigenvector pair in the symmetry frame, normalized to unit length
// with the overall phase fixed so complex conjugation acts as +e^{2i eta} on
// the first vector and -e^{2i eta} on the second (when xi is real).
inline std::pair<Spinor, Spinor> symmetry_frame_pair(const DispersionPoint& d) {
  const Complex a_plus = d.eta + d.xi;
  const Complex a_minus = d.eta - d.xi;
  const Complex pref = std::exp(-kI * d.eta);
  Spinor plus, minus;
  plus << pref * std::cos(a_plus), -pref * std::sin(a_plus);
  minus << kI * pref * std::sin(a_minus), kI * pref * std::cos(a_minus);
  plus /= plus.norm();
  minus /= minus.norm();
  return {plus, minus};
}

}  // namespace detail

// Eigenvectors of the one-step Bloch matrix, band (+, -) matching the
// (eps_plus, eps_minus) branches of dispersion(). Throws DegeneracyError at
// an exceptional point (cos 2 xi -> 0).
inline std::pair<Spinor, Spinor> eigenvectors(double k, const HomogeneousParams& p,
                                              Frame frame = Frame::Original) {
  const DispersionPoint d = dispersion(k, p);
  const double gap = std::abs(std::cos(2.0 * d.xi));
  if (gap < 1e-6)
    throw DegeneracyError("bands coalesce at k=" + std::to_string(k) +
                          " (|cos 2 xi| = " + std::to_string(gap) + ")");

  const SpinorMatrix u_sym = bloch_step(k, p, Frame::Symmetry);
  const Complex lam_plus = std::exp(-kI * d.eps_plus);
  const Complex lam_minus = std::exp(-kI * d.eps_minus);

  std::pair<Spinor, Spinor> pair;
  if (d.d_norm > 1e-14) {
    pair = detail::symmetry_frame_pair(d);
    // The branch conventions above tie the first vector to eps_plus; if a
    // pathological rounding path pairs them the other way, swap.
    const double direct = (u_sym * pair.first - lam_plus * pair.first).norm() +
                          (u_sym * pair.second - lam_minus * pair.second).norm();
    const double swapped = (u_sym * pair.first - lam_minus * pair.first).norm() +
                           (u_sym * pair.second - lam_plus * pair.second).norm();
    if (swapped < direct) std::swap(pair.first, pair.second);
  } else {
    // d1 = d3 = 0: the closed-form parametrization is singular; the matrix is
    // cos(eps) sigma0 + d2 sigma2 there, diagonalized directly.
    Eigen::ComplexEigenSolver<SpinorMatrix> es(u_sym);
    Spinor v0 = es.eigenvectors().col(0), v1 = es.eigenvectors().col(1);
    if (std::abs(es.eigenvalues()(0) - lam_plus) + std::abs(es.eigenvalues()(1) - lam_minus) <=
        std::abs(es.eigenvalues()(0) - lam_minus) + std::abs(es.eigenvalues()(1) - lam_plus))
      pair = {v0, v1};
    else
      pair = {v1, v0};
  }

  if (frame == Frame::Original) {
    const SpinorMatrix back = coin_matrix(-p.theta1 / 2.0);
    pair.first = (back * pair.first).normalized();
    pair.second = (back * pair.second).normalized();
  }
  return pair;
}

// Quasi-energy branches of the 4-site-cell walk used in the experiment:
// cos(+-eps) = -cos(phi0) cosh(2 gamma0)/2 +- sqrt(f_k). Returns the four
// branches (+acos, -acos for each sign of the square root); each appears
// twice in the 8x8 cell spectrum.
inline std::array<Complex, 4> experiment_dispersion(double k, double gamma0, double phi0) {
  if (!std::isfinite(k) || !std::isfinite(gamma0) || !std::isfinite(phi0))
    throw InvalidParameter("experiment dispersion inputs must be finite");
  const double c = std::cos(phi0);
  const double a = -0.5 * c * std::cosh(2 * gamma0);
  const double f = (std::cosh(4 * gamma0) * (c * c - 1.0) - 3.0 * c * c + 4.0 + std::cos(k)) / 8.0;
  const Complex root = std::sqrt(Complex{f, 0.0});
  std::array<Complex, 4> eps;
  int idx = 0;
  for (const Complex cosval : {a + root, a - root}) {
    const Complex e = std::acos(cosval);
    eps[idx++] = wrap_quasienergy(e);
    eps[idx++] = wrap_quasienergy(-e);
  }
  return eps;
}

struct BandScan {
  std::vector<DispersionPoint> points;
  // Sub-interval of the grid where |Im eps| exceeds 1e-12; empty if none.
  bool has_complex_window = false;
  double complex_k_min = 0.0;
  double complex_k_max = 0.0;
};

// Uniform M-point grid spanning (-pi, pi].
inline BandScan scan_bz(const HomogeneousParams& p, int grid_points) {
  if (grid_points < 2) throw InvalidParameter("grid must have at least 2 points");
  BandScan scan;
  scan.points.reserve(grid_points);
  for (int j = 0; j < grid_points; ++j) {
    const double k = -M_PI + 2.0 * M_PI * (j + 1) / grid_points;
    scan.points.push_back(dispersion(k, p));
    const DispersionPoint& d = scan.points.back();
    if (std::abs(d.eps_plus.imag()) > 1e-12) {
      if (!scan.has_complex_window) {
        scan.has_complex_window = true;
        scan.complex_k_min = k;
      }
      scan.complex_k_max = k;
    }
  }
  return scan;
}

}  // namespace ptwalk
