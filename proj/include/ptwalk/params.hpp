#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ptwalk/errors.hpp"

namespace ptwalk {

// Parameters of the translation-invariant walk: two coin angles, the
// log-gain exponent of the diag(e^g, e^-g) gain-loss factor, and the
// diag(e^{i phi}, e^{-i phi}) phase.
struct HomogeneousParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
};

inline void validate(const HomogeneousParams& p) {
  if (!std::isfinite(p.theta1) || !std::isfinite(p.theta2) ||
      !std::isfinite(p.gamma) || !std::isfinite(p.phi))
    throw InvalidParameter("homogeneous parameters must be finite");
}

// Site-resolved parameter fields of a finite ring walk. Sites carry signed
// indices n in {-N/2, ..., N/2-1}; storage index is n + N/2. Substep index
// i is 0-based internally (paper-style substeps 1 and 2).
class WalkConfig {
 public:
  WalkConfig(int sites, std::array<std::vector<double>, 2> theta,
             std::array<std::vector<double>, 2> gain_l,
             std::array<std::vector<double>, 2> gain_r,
             std::array<std::vector<double>, 2> phase_l,
             std::array<std::vector<double>, 2> phase_r)
      : sites_(sites),
        theta_(std::move(theta)),
        gain_l_(std::move(gain_l)),
        gain_r_(std::move(gain_r)),
        phase_l_(std::move(phase_l)),
        phase_r_(std::move(phase_r)) {
    if (sites_ < 4 || sites_ % 2 != 0)
      throw InvalidParameter("lattice size must be even and >= 4, got " +
                             std::to_string(sites_));
    for (int i = 0; i < 2; ++i) {
      check_field(theta_[i], "theta", i, false);
      check_field(gain_l_[i], "gainL", i, true);
      check_field(gain_r_[i], "gainR", i, true);
      check_field(phase_l_[i], "phiL", i, false);
      check_field(phase_r_[i], "phiR", i, false);
    }
  }

  int sites() const { return sites_; }

  // n is a signed site index, wrapped onto the ring.
  int storage_index(int n) const {
    int m = (n + sites_ / 2) % sites_;
    if (m < 0) m += sites_;
    return m;
  }
  int site_of(int storage) const { return storage - sites_ / 2; }

  double theta(int substep, int n) const { return theta_[substep][storage_index(n)]; }
  double gain(int substep, int spin, int n) const {
    return spin == 0 ? gain_l_[substep][storage_index(n)]
                     : gain_r_[substep][storage_index(n)];
  }
  double phase(int substep, int spin, int n) const {
    return spin == 0 ? phase_l_[substep][storage_index(n)]
                     : phase_r_[substep][storage_index(n)];
  }

  bool is_homogeneous() const {
    for (int i = 0; i < 2; ++i)
      for (const auto* f : {&theta_[i], &gain_l_[i], &gain_r_[i], &phase_l_[i], &phase_r_[i]})
        for (double v : *f)
          if (v != (*f)[0]) return false;
    return true;
  }

  // Fields for the walk with constant parameters: G_2 = G_1^{-1} = diag(e^g, e^-g),
  // Phi_1 = Phi_2 = diag(e^{i phi}, e^{-i phi}).
  static WalkConfig homogeneous(const HomogeneousParams& p, int sites) {
    validate(p);
    std::vector<double> t1(sites, p.theta1), t2(sites, p.theta2);
    std::vector<double> g1l(sites, std::exp(-p.gamma)), g1r(sites, std::exp(p.gamma));
    std::vector<double> g2l(sites, std::exp(p.gamma)), g2r(sites, std::exp(-p.gamma));
    std::vector<double> pl(sites, p.phi), pr(sites, -p.phi);
    return WalkConfig(sites, {t1, t2}, {g1l, g2l}, {g1r, g2r}, {pl, pl}, {pr, pr});
  }

 private:
  void check_field(const std::vector<double>& f, const char* name, int substep,
                   bool positive) const {
    if (static_cast<int>(f.size()) != sites_)
      throw InvalidParameter(std::string(name) + "[" + std::to_string(substep + 1) +
                             "] must have one value per site");
    for (double v : f) {
      if (!std::isfinite(v))
        throw InvalidParameter(std::string(name) + " contains a non-finite value");
      if (positive && v <= 0.0)
        throw InvalidParameter(std::string(name) + " must be positive everywhere");
    }
  }

  int sites_;
  std::array<std::vector<double>, 2> theta_, gain_l_, gain_r_, phase_l_, phase_r_;
};

}  // namespace ptwalk
