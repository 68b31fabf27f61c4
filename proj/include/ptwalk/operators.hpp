#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "ptwalk/errors.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/spinor.hpp"

namespace ptwalk {

// Time frame of the one-step operator: Original is S G2 P2 C2 S G1 P1 C1,
// Symmetry conjugates by the half coin so the substep order reads the same
// forwards and backwards.
enum class Frame { Original, Symmetry };

using DenseOperator = Eigen::MatrixXcd;

// Internal-space coin e^{i theta sigma1}.
inline SpinorMatrix coin_matrix(double theta) {
  if (!std::isfinite(theta)) throw InvalidParameter("coin angle must be finite");
  SpinorMatrix m;
  const double c = std::cos(theta), s = std::sin(theta);
  m << c, kI * s, kI * s, c;
  return m;
}

// diag(gL, gR) amplitude rescaling; non-unitary whenever a factor differs from 1.
inline SpinorMatrix gain_matrix(double gain_l, double gain_r) {
  if (!(gain_l > 0.0) || !(gain_r > 0.0) || !std::isfinite(gain_l) || !std::isfinite(gain_r))
    throw InvalidParameter("gain factors must be positive and finite");
  SpinorMatrix m;
  m << gain_l, 0, 0, gain_r;
  return m;
}

inline SpinorMatrix phase_matrix(double phi_l, double phi_r) {
  if (!std::isfinite(phi_l) || !std::isfinite(phi_r))
    throw InvalidParameter("phase angles must be finite");
  SpinorMatrix m;
  m << std::exp(kI * phi_l), 0, 0, std::exp(kI * phi_r);
  return m;
}

// Momentum-space shift e^{i k sigma3}.
inline SpinorMatrix shift_bloch(double k) {
  if (!std::isfinite(k)) throw InvalidParameter("wave number must be finite");
  SpinorMatrix m;
  m << std::exp(kI * k), 0, 0, std::exp(-kI * k);
  return m;
}

// One-step Bloch matrix of the homogeneous walk at wave number k.
inline SpinorMatrix bloch_step(double k, const HomogeneousParams& p,
                               Frame frame = Frame::Original) {
  validate(p);
  const SpinorMatrix s = shift_bloch(k);
  const SpinorMatrix g = gain_matrix(std::exp(p.gamma), std::exp(-p.gamma));
  const SpinorMatrix ginv = gain_matrix(std::exp(-p.gamma), std::exp(p.gamma));
  const SpinorMatrix ph = phase_matrix(p.phi, -p.phi);
  const SpinorMatrix u = s * g * ph * coin_matrix(p.theta2) * s * ginv * ph * coin_matrix(p.theta1);
  if (frame == Frame::Original) return u;
  const SpinorMatrix half = coin_matrix(p.theta1 / 2.0);
  return half * u * coin_matrix(-p.theta1 / 2.0);
}

namespace detail {

// Dense index layout: (site n, spin sigma) -> 2 * ((n + N/2) mod N) + sigma,
// sigma 0 = L, 1 = R.
inline DenseOperator dense_coin(const WalkConfig& c, int substep, double scale = 1.0) {
  const int n_sites = c.sites();
  DenseOperator m = DenseOperator::Zero(2 * n_sites, 2 * n_sites);
  for (int j = 0; j < n_sites; ++j) {
    const SpinorMatrix blk = coin_matrix(scale * c.theta(substep, c.site_of(j)));
    m.block<2, 2>(2 * j, 2 * j) = blk;
  }
  return m;
}

inline DenseOperator dense_gain_phase(const WalkConfig& c, int substep) {
  const int n_sites = c.sites();
  DenseOperator m = DenseOperator::Zero(2 * n_sites, 2 * n_sites);
  for (int j = 0; j < n_sites; ++j) {
    const int n = c.site_of(j);
    m(2 * j, 2 * j) = c.gain(substep, 0, n) * std::exp(kI * c.phase(substep, 0, n));
    m(2 * j + 1, 2 * j + 1) = c.gain(substep, 1, n) * std::exp(kI * c.phase(substep, 1, n));
  }
  return m;
}

// Conditional translation: L moves one site left, R one site right, wrapping
// around the ring. Crossing the seam between sites N/2-1 and -N/2 picks up
// the twist phase (e^{-i tau} leftward, e^{+i tau} rightward); tau = 0 is the
// plain periodic ring.
inline DenseOperator dense_shift(int n_sites, double twist = 0.0) {
  DenseOperator m = DenseOperator::Zero(2 * n_sites, 2 * n_sites);
  const Complex left_seam = std::exp(-kI * twist);
  const Complex right_seam = std::exp(kI * twist);
  for (int j = 0; j < n_sites; ++j) {
    const int jl = (j - 1 + n_sites) % n_sites;
    const int jr = (j + 1) % n_sites;
    m(2 * jl, 2 * j) = (j == 0) ? left_seam : Complex{1.0, 0.0};
    m(2 * jr + 1, 2 * j + 1) = (j == n_sites - 1) ? right_seam : Complex{1.0, 0.0};
  }
  return m;
}

}  // namespace detail

// Full 2N x 2N one-step operator on the (twisted) ring, factors applied
// right-to-left: C1, P1, G1, S, C2, P2, G2, S.
inline DenseOperator assemble_dense_twisted(const WalkConfig& c, Frame frame, double twist) {
  const DenseOperator s = detail::dense_shift(c.sites(), twist);
  const DenseOperator gp1 = detail::dense_gain_phase(c, 0);
  const DenseOperator gp2 = detail::dense_gain_phase(c, 1);
  const DenseOperator c2 = detail::dense_coin(c, 1);
  if (frame == Frame::Original)
    return s * gp2 * c2 * s * gp1 * detail::dense_coin(c, 0);
  const DenseOperator half = detail::dense_coin(c, 0, 0.5);
  return half * s * gp2 * c2 * s * gp1 * half;
}

inline DenseOperator assemble_dense(const WalkConfig& c, Frame frame = Frame::Original) {
  return assemble_dense_twisted(c, frame, 0.0);
}

}  // namespace ptwalk
