#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "ptwalk/operators.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/spinor.hpp"

namespace test_support {

using ptwalk::Complex;

// Greedy nearest-neighbour matching; adequate when true clusters are far
// apart compared to the tolerance under test.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const Complex& x : a) {
    size_t best = 0;
    double bestd = 1e300;
    for (size_t i = 0; i < b.size(); ++i) {
      const double d = std::abs(b[i] - x);
      if (d < bestd) {
        bestd = d;
        best = i;
      }
    }
    worst = std::max(worst, bestd);
    b.erase(b.begin() + best);
  }
  return worst;
}

inline std::vector<Complex> to_vector(const Eigen::VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

// Eigenvalues of the homogeneous walk collected over the N discrete momenta
// k_m = 2 pi m / N.
inline std::vector<Complex> bloch_spectrum(const ptwalk::HomogeneousParams& p, int sites) {
  std::vector<Complex> out;
  for (int m = 0; m < sites; ++m) {
    const double k = 2.0 * M_PI * m / sites;
    Eigen::ComplexEigenSolver<ptwalk::SpinorMatrix> es(ptwalk::bloch_step(k, p));
    out.push_back(es.eigenvalues()(0));
    out.push_back(es.eigenvalues()(1));
  }
  return out;
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  ptwalk::HomogeneousParams params() {
    return {uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(-0.6, 0.6), uniform(-3.0, 3.0)};
  }
  ptwalk::WalkConfig config(int sites) {
    std::array<std::vector<double>, 2> th, gl, gr, pl, pr;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < sites; ++j) {
        th[i].push_back(uniform(-1.5, 1.5));
        gl[i].push_back(uniform(0.7, 1.4));
        gr[i].push_back(uniform(0.7, 1.4));
        pl[i].push_back(uniform(-M_PI, M_PI));
        pr[i].push_back(uniform(-M_PI, M_PI));
      }
    return ptwalk::WalkConfig(sites, th, gl, gr, pl, pr);
  }
};

}  // namespace test_support
