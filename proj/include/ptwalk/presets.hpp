#pragma once

#include <cmath>
#include <vector>

#include "ptwalk/params.hpp"

namespace ptwalk {

// Optical-fibre-loop walk: Hadamard-angle coins, gain e^{+-gamma0} swapped
// between the substeps, zero L phases and a period-4 (+, +, -, -) * phi0
// pattern on the R phases.
inline WalkConfig experiment_config(int sites, double gamma0, double phi0) {
  std::vector<double> th(sites, M_PI / 4);
  std::vector<double> g1l(sites, std::exp(gamma0)), g2l(sites, std::exp(-gamma0));
  std::vector<double> g1r(sites, std::exp(-gamma0)), g2r(sites, std::exp(gamma0));
  std::vector<double> pl(sites, 0.0);
  std::vector<double> pr(sites);
  for (int j = 0; j < sites; ++j) {
    const int n = j - sites / 2;
    const int m = ((n % 4) + 4) % 4;
    pr[j] = (m == 0 || m == 1) ? phi0 : -phi0;
  }
  return WalkConfig(sites, {th, th}, {g1l, g2l}, {g1r, g2r}, {pl, pl}, {pr, pr});
}

inline HomogeneousParams experiment_defaults() {
  return {M_PI / 4, M_PI / 4, std::log(1.1), 6 * M_PI / 5};
}

// Walk with four parameter regions on a ring of 2L sites, n in {-L..L-1}.
// Substep-1 fields follow the region table; substep-2 fields are derived
// from the reflection conditions with q = 0 (L channel n -> 1-n, R channel
// n -> -1-n, gains inverted, phases copied), wrapping around the ring.
inline WalkConfig four_region_config(int half_sites) {
  const int big_l = half_sites;
  const int sites = 2 * big_l;
  const auto in_a = [&](int n) { return -big_l / 2 <= n && n <= big_l / 2; };
  const auto t1 = [&](int n) { return in_a(n) ? M_PI / 4 : -M_PI / 8; };
  const auto t2 = [&](int n) { return in_a(n) ? -M_PI / 3 : M_PI / 6; };
  const auto g1l = [&](int n) { return n <= -1 ? 1.1 : 1.2; };
  const auto g1r = [&](int n) { return n <= -1 ? 1.2 : 1.1; };
  const auto p1l = [&](int n) { return n <= -1 ? M_PI / 4 : M_PI / 8; };
  const auto p1r = [&](int n) { return n <= -1 ? -M_PI / 3 : -M_PI / 6; };
  const auto wrap = [&](int m) {
    int w = (m + big_l) % sites;
    if (w < 0) w += sites;
    return w - big_l;
  };
  std::vector<double> th1(sites), th2(sites), gl1(sites), gl2(sites), gr1(sites),
      gr2(sites), pl1(sites), pl2(sites), pr1(sites), pr2(sites);
  for (int j = 0; j < sites; ++j) {
    const int n = j - big_l;
    th1[j] = t1(n);
    th2[j] = t2(n);
    gl1[j] = g1l(n);
    gr1[j] = g1r(n);
    pl1[j] = p1l(n);
    pr1[j] = p1r(n);
    gl2[j] = 1.0 / g1l(wrap(1 - n));
    gr2[j] = 1.0 / g1r(wrap(-1 - n));
    pl2[j] = p1l(wrap(1 - n));
    pr2[j] = p1r(wrap(-1 - n));
  }
  return WalkConfig(sites, {th1, th2}, {gl1, gl2}, {gr1, gr2}, {pl1, pl2}, {pr1, pr2});
}

}  // namespace ptwalk
