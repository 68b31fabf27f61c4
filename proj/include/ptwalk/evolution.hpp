#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "ptwalk/errors.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/spinor.hpp"

namespace ptwalk {

// Amplitudes psi_{n,sigma} on the ring, same (n, sigma) layout as the dense
// operators: index 2 * ((n + N/2) mod N) + sigma.
struct WalkState {
  int sites = 0;
  Eigen::VectorXcd amplitudes;
  int time = 0;

  Complex amplitude(int n, int spin) const {
    int m = (n + sites / 2) % sites;
    if (m < 0) m += sites;
    return amplitudes(2 * m + spin);
  }
};

inline WalkState init_state(int sites, int origin, const Spinor& spin) {
  if (sites < 4 || sites % 2 != 0)
    throw InvalidParameter("lattice size must be even and >= 4");
  if (origin < -sites / 2 || origin >= sites / 2)
    throw InvalidParameter("initial site outside the lattice");
  const double norm = spin.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InvalidParameter("initial spinor must be nonzero and finite");
  WalkState s;
  s.sites = sites;
  s.amplitudes = Eigen::VectorXcd::Zero(2 * sites);
  const int j = (origin + sites / 2);
  s.amplitudes(2 * j) = spin(0) / norm;
  s.amplitudes(2 * j + 1) = spin(1) / norm;
  return s;
}

namespace detail {

// In-place substep: coin, then phase, then gain, then conditional shift.
inline void apply_substep(Eigen::VectorXcd& amp, const WalkConfig& c, int substep) {
  const int n_sites = c.sites();
  for (int j = 0; j < n_sites; ++j) {
    const int n = c.site_of(j);
    const double th = c.theta(substep, n);
    const Complex a = amp(2 * j), b = amp(2 * j + 1);
    const double cth = std::cos(th);
    const Complex sth = kI * std::sin(th);
    Complex l = cth * a + sth * b;
    Complex r = sth * a + cth * b;
    l *= c.gain(substep, 0, n) * std::exp(kI * c.phase(substep, 0, n));
    r *= c.gain(substep, 1, n) * std::exp(kI * c.phase(substep, 1, n));
    amp(2 * j) = l;
    amp(2 * j + 1) = r;
  }
  // L moves one site left, R one site right (ring wrap).
  const Complex l0 = amp(0);
  for (int j = 0; j < n_sites - 1; ++j) amp(2 * j) = amp(2 * (j + 1));
  amp(2 * (n_sites - 1)) = l0;
  const Complex rl = amp(2 * (n_sites - 1) + 1);
  for (int j = n_sites - 1; j > 0; --j) amp(2 * j + 1) = amp(2 * (j - 1) + 1);
  amp(1) = rl;
}

inline bool occupied(const Eigen::VectorXcd& amp, int j) {
  return amp(2 * j) != Complex{0.0, 0.0} || amp(2 * j + 1) != Complex{0.0, 0.0};
}

}  // namespace detail

// One full step; O(N), never materializes the dense operator.
inline WalkState step(const WalkState& s, const WalkConfig& c) {
  if (s.sites != c.sites())
    throw InvalidParameter("state lattice (" + std::to_string(s.sites) +
                           ") does not match config (" + std::to_string(c.sites()) + ")");
  WalkState out = s;
  detail::apply_substep(out.amplitudes, c, 0);
  detail::apply_substep(out.amplitudes, c, 1);
  out.time = s.time + 1;
  return out;
}

struct EvolutionRecord {
  // total_probability[t] = sum_n |psi_n(t)|^2 for t = 0..T.
  std::vector<double> total_probability;
  // distributions[t](j) = |psi_{n,L}|^2 + |psi_{n,R}|^2 at storage index j.
  std::vector<Eigen::VectorXd> distributions;
  WalkState final_state;
};

// Ring size for which a T-step run from a localized state never wraps.
inline int auto_lattice_size(int steps) { return 4 * steps + 8; }

inline EvolutionRecord run(const WalkConfig& c, const WalkState& initial, int steps) {
  if (steps < 0) throw InvalidParameter("step count must be nonnegative");
  if (initial.sites != c.sites()) throw InvalidParameter("state lattice does not match config");
  const int n_sites = c.sites();
  EvolutionRecord rec;
  rec.total_probability.reserve(steps + 1);
  rec.distributions.reserve(steps + 1);
  WalkState s = initial;
  const auto record = [&](const WalkState& st) {
    Eigen::VectorXd dist(n_sites);
    for (int j = 0; j < n_sites; ++j)
      dist(j) = std::norm(st.amplitudes(2 * j)) + std::norm(st.amplitudes(2 * j + 1));
    rec.total_probability.push_back(dist.sum());
    rec.distributions.push_back(std::move(dist));
  };
  record(s);
  for (int t = 0; t < steps; ++t) {
    // Support spreads by at most two sites per step; amplitude next to both
    // ends means the two fronts are about to collide across the seam.
    if ((detail::occupied(s.amplitudes, 0) || detail::occupied(s.amplitudes, 1)) &&
        (detail::occupied(s.amplitudes, n_sites - 1) || detail::occupied(s.amplitudes, n_sites - 2)))
      throw BoundaryOverflow("wavepacket reached both lattice ends at t=" +
                             std::to_string(s.time));
    s = step(s, c);
    record(s);
  }
  rec.final_state = std::move(s);
  return rec;
}

enum class GrowthClass { Unitary, BoundedOscillatory, Linear, Exponential };

inline const char* to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::Unitary: return "unitary";
    case GrowthClass::BoundedOscillatory: return "bounded-oscillatory";
    case GrowthClass::Linear: return "linear";
    case GrowthClass::Exponential: return "exponential";
  }
  return "?";
}

namespace detail {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

inline LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  return f;
}

}  // namespace detail

// Classifies the P(t) series over the window t in [T/2, T]: unitary if
// max|P-1| < 1e-10; exponential if the ln P fit has slope > 1e-3 per step
// and R^2 > 0.99; linear if the P fit has R^2 > 0.99 with positive slope
// and the exponential criterion failed; bounded-oscillatory otherwise.
inline GrowthClass classify_growth(const std::vector<double>& total_probability) {
  if (total_probability.size() < 50)
    throw InvalidParameter("growth classification needs at least 50 samples");
  const int last = static_cast<int>(total_probability.size()) - 1;
  std::vector<double> ts, ps, lps;
  double dev = 0.0;
  for (int t = last / 2; t <= last; ++t) {
    ts.push_back(static_cast<double>(t));
    ps.push_back(total_probability[t]);
    lps.push_back(std::log(total_probability[t]));
    dev = std::max(dev, std::abs(total_probability[t] - 1.0));
  }
  if (dev < 1e-10) return GrowthClass::Unitary;
  const auto expfit = detail::least_squares(ts, lps);
  if (expfit.slope > 1e-3 && expfit.r2 > 0.99) return GrowthClass::Exponential;
  const auto linfit = detail::least_squares(ts, ps);
  if (linfit.slope > 0.0 && linfit.r2 > 0.99) return GrowthClass::Linear;
  return GrowthClass::BoundedOscillatory;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double excess_kurtosis = 0.0;
};

// Moments of the normalized site distribution |psi_n|^2 / P.
inline Moments distribution_moments(const WalkState& s) {
  double total = 0.0;
  for (int j = 0; j < s.sites; ++j)
    total += std::norm(s.amplitudes(2 * j)) + std::norm(s.amplitudes(2 * j + 1));
  if (!(total > 0.0)) throw InvalidState("state has zero total probability");
  Moments m;
  for (int j = 0; j < s.sites; ++j) {
    const double p = (std::norm(s.amplitudes(2 * j)) + std::norm(s.amplitudes(2 * j + 1))) / total;
    m.mean += (j - s.sites / 2) * p;
  }
  double m4 = 0.0;
  for (int j = 0; j < s.sites; ++j) {
    const double p = (std::norm(s.amplitudes(2 * j)) + std::norm(s.amplitudes(2 * j + 1))) / total;
    const double d = (j - s.sites / 2) - m.mean;
    m.variance += d * d * p;
    m4 += d * d * d * d * p;
  }
  m.excess_kurtosis = m.variance > 0.0 ? m4 / (m.variance * m.variance) - 3.0 : 0.0;
  return m;
}

}  // namespace ptwalk
