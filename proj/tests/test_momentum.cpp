#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "ptwalk/momentum.hpp"
#include "ptwalk/presets.hpp"
#include "test_support.hpp"

using namespace ptwalk;
using test_support::multiset_distance;
using Catch::Approx;

namespace {

// Exact endpoint of the complex-quasienergy window: the k > 0 solving
// cos(t1)cos(t2)cos(2k) - sin(t1)sin(t2)cosh(2g) = 1.
double window_edge(double t1, double t2, double gamma) {
  const double c1 = std::cos(t1) * std::cos(t2);
  const double c2 = -std::sin(t1) * std::sin(t2);
  return std::acos((1.0 - c2 * std::cosh(2 * gamma)) / c1) / 2.0;
}

std::vector<Complex> bloch_pair(double k, const HomogeneousParams& p) {
  Eigen::ComplexEigenSolver<SpinorMatrix> es(bloch_step(k, p));
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

}  // namespace

TEST_CASE("dispersion closed forms", "[momentum]") {
  SECTION("coinless walk disperses as 2(k + phi)") {
    const HomogeneousParams p{0.0, 0.0, 0.0, 0.9};
    for (double k : {0.0, 0.7, -2.1}) {
      const DispersionPoint d = dispersion(k, p);
      CHECK(std::abs(d.eps_plus.imag()) < 1e-14);
      const double got = std::cos(d.eps_plus.real());
      CHECK(got == Approx(std::cos(2 * (k + p.phi))).margin(1e-12));
      CHECK(multiset_distance({std::exp(-kI * d.eps_plus), std::exp(-kI * d.eps_minus)},
                              {std::exp(-2.0 * kI * (k + p.phi)), std::exp(2.0 * kI * (k + p.phi))}) <
            1e-12);
    }
  }
  SECTION("unitary point value") {
    const DispersionPoint d = dispersion(0.0, {M_PI / 4, -M_PI / 7, 0.0, 0.0});
    CHECK(d.eps_plus.real() == Approx(0.33659921288462064).margin(1e-12));
    CHECK(d.eps_plus.imag() == 0.0);
    CHECK(d.eps_minus.real() == Approx(-0.33659921288462064).margin(1e-12));
  }
  SECTION("strong gain makes the band complex at k=0") {
    const DispersionPoint d = dispersion(0.0, {M_PI / 4, -M_PI / 7, std::log(1.5), 0.0});
    CHECK(std::abs(d.eps_plus.imag()) > 1e-3);
  }
}

TEST_CASE("dispersion invariants", "[momentum]") {
  test_support::Rng rng(11);
  SECTION("branches match the Bloch eigenvalues everywhere") {
    for (int trial = 0; trial < 300; ++trial) {
      const HomogeneousParams p = rng.params();
      const double k = rng.uniform(-M_PI, M_PI);
      const DispersionPoint d = dispersion(k, p);
      CHECK(multiset_distance({std::exp(-kI * d.eps_plus), std::exp(-kI * d.eps_minus)},
                              bloch_pair(k, p)) < 1e-10);
      // Both branches satisfy the dispersion relation.
      const Complex rhs = std::cos(p.theta1) * std::cos(p.theta2) * std::cos(2 * (k + p.phi)) -
                          std::sin(p.theta1) * std::sin(p.theta2) * std::cosh(2 * p.gamma);
      CHECK(std::abs(std::cos(d.eps_plus) - rhs) < 1e-10);
      CHECK(std::abs(std::cos(d.eps_minus) - rhs) < 1e-10);
    }
  }
  SECTION("xi is real exactly in the unbroken regime") {
    for (int trial = 0; trial < 300; ++trial) {
      const HomogeneousParams p = rng.params();
      const double k = rng.uniform(-M_PI, M_PI);
      const DispersionPoint d = dispersion(k, p);
      const double margin = d.d2 * d.d2 - (d.d1 * d.d1 + d.d3 * d.d3);
      if (std::abs(margin) < 1e-9) continue;
      CHECK((std::abs(d.xi.imag()) > 1e-9) == (margin > 0.0));
    }
  }
}

TEST_CASE("analytic eigenvectors", "[momentum]") {
  SECTION("diagonal walk has basis eigenvectors") {
    const auto [plus, minus] = eigenvectors(0.4, {0.0, 0.0, 0.0, 0.0});
    CHECK(std::abs(std::abs(plus(0)) - 1.0) < 1e-12);
    CHECK(std::abs(plus(1)) < 1e-12);
    CHECK(std::abs(minus(0)) < 1e-12);
  }
  SECTION("eigen residual in both frames") {
    const HomogeneousParams p{M_PI / 4, -M_PI / 7, std::log(1.1), 0.0};
    const DispersionPoint d = dispersion(0.3, p);
    for (Frame f : {Frame::Original, Frame::Symmetry}) {
      const auto [plus, minus] = eigenvectors(0.3, p, f);
      const SpinorMatrix u = bloch_step(0.3, p, f);
      CHECK((u * plus - std::exp(-kI * d.eps_plus) * plus).norm() < 1e-9);
      CHECK((u * minus - std::exp(-kI * d.eps_minus) * minus).norm() < 1e-9);
    }
  }
  SECTION("residual over random parameters") {
    test_support::Rng rng(23);
    int tested = 0;
    for (int trial = 0; trial < 500 && tested < 300; ++trial) {
      const HomogeneousParams p = rng.params();
      const double k = rng.uniform(-M_PI, M_PI);
      const DispersionPoint d = dispersion(k, p);
      try {
        const auto [plus, minus] = eigenvectors(k, p, Frame::Symmetry);
        const SpinorMatrix u = bloch_step(k, p, Frame::Symmetry);
        CHECK((u * plus - std::exp(-kI * d.eps_plus) * plus).norm() < 1e-9);
        CHECK((u * minus - std::exp(-kI * d.eps_minus) * minus).norm() < 1e-9);
        ++tested;
      } catch (const DegeneracyError&) {
      }
    }
    CHECK(tested >= 300);
  }
  SECTION("degeneracy error at the band-touching gain") {
    const double eg = exceptional_gamma(M_PI / 4, -M_PI / 7);
    const HomogeneousParams p{M_PI / 4, -M_PI / 7, std::log(eg), 0.0};
    CHECK_THROWS_AS(eigenvectors(0.0, p), DegeneracyError);
  }
  SECTION("conjugation eigenphase pattern in the symmetry frame") {
    test_support::Rng rng(31);
    int tested = 0;
    for (int trial = 0; trial < 600 && tested < 100; ++trial) {
      const HomogeneousParams p = rng.params();
      const double k = rng.uniform(-M_PI, M_PI);
      const DispersionPoint d = dispersion(k, p);
      if (d.d2 * d.d2 > d.d1 * d.d1 + d.d3 * d.d3 - 1e-4) continue;  // stay unbroken
      const auto [plus, minus] = eigenvectors(k, p, Frame::Symmetry);
      const Complex expected = std::exp(2.0 * kI * d.eta);
      CHECK((plus.conjugate() - expected * plus).norm() < 1e-9);
      CHECK((minus.conjugate() + expected * minus).norm() < 1e-9);
      ++tested;
    }
    CHECK(tested >= 100);
  }
}

TEST_CASE("exceptional gain factor", "[momentum]") {
  SECTION("closed form and independent identity") {
    const double eg = exceptional_gamma(M_PI / 4, -M_PI / 7);
    CHECK(eg == Approx(1.3471407471574450).epsilon(1e-12));
    CHECK(eg >= 1.34);
    CHECK(eg < 1.35);
    const double arg = (std::cos(M_PI / 4) * std::cos(-M_PI / 7) - 1.0) /
                       (std::sin(M_PI / 4) * std::sin(-M_PI / 7));
    CHECK(std::cosh(2.0 * std::log(eg)) == Approx(arg).margin(1e-10));
  }
  SECTION("error cases") {
    CHECK_THROWS_AS(exceptional_gamma(M_PI / 4, 0.0), NoExceptionalPoint);
    // Same-sign coin angles put the cosh argument below one.
    CHECK_THROWS_AS(exceptional_gamma(M_PI / 4, M_PI / 7), NoExceptionalPoint);
  }
}

TEST_CASE("four-site cell dispersion", "[momentum]") {
  SECTION("unitary cell at k=0") {
    const auto eps = experiment_dispersion(0.0, 0.0, 0.0);
    std::vector<Complex> lams;
    for (const Complex& e : eps) lams.push_back(std::exp(-kI * e));
    CHECK(multiset_distance(lams, {Complex{0, 1}, Complex{0, -1}, Complex{-1, 0},
                                   Complex{-1, 0}}) < 1e-12);
  }
  SECTION("branches match the twisted-cell spectrum") {
    for (double eg : {1.1, 1.4}) {
      const double g0 = std::log(eg), p0 = 6 * M_PI / 5;
      for (double k : {0.0, 0.35, -2.2, M_PI}) {
        const DenseOperator cell =
            assemble_dense_twisted(experiment_config(4, g0, p0), Frame::Original, k);
        Eigen::ComplexEigenSolver<DenseOperator> es(cell);
        std::vector<Complex> expected;
        for (const Complex& e : experiment_dispersion(k, g0, p0)) {
          expected.push_back(std::exp(-kI * e));
          expected.push_back(std::exp(-kI * e));
        }
        CHECK(multiset_distance(test_support::to_vector(es.eigenvalues()), expected) < 1e-9);
      }
    }
  }
  SECTION("weak gain keeps the cell bands real, strong gain does not") {
    double worst_weak = 0.0, worst_strong = 0.0;
    for (int j = 0; j <= 100; ++j) {
      const double k = -M_PI + 2 * M_PI * j / 100.0;
      for (const Complex& e : experiment_dispersion(k, std::log(1.1), 6 * M_PI / 5))
        worst_weak = std::max(worst_weak, std::abs(e.imag()));
      for (const Complex& e : experiment_dispersion(k, std::log(1.4), 6 * M_PI / 5))
        worst_strong = std::max(worst_strong, std::abs(e.imag()));
    }
    CHECK(worst_weak < 1e-10);
    CHECK(worst_strong > 1e-3);
  }
}

TEST_CASE("brillouin zone scans", "[momentum]") {
  SECTION("minimal grid") {
    const BandScan scan = scan_bz({0.3, 0.4, 0.1, 0.0}, 2);
    CHECK(scan.points.size() == 2);
    CHECK(scan.points[0].k < scan.points[1].k);
    CHECK(scan.points[1].k == Approx(M_PI));
  }
  CHECK_THROWS_AS(scan_bz({0.3, 0.4, 0.1, 0.0}, 1), InvalidParameter);
  SECTION("bands stay real below the exceptional gain") {
    for (double eg : {1.0, 1.1, 1.3}) {
      const BandScan scan = scan_bz({M_PI / 4, -M_PI / 7, std::log(eg), 0.0}, 401);
      double worst = 0.0;
      for (const auto& d : scan.points) worst = std::max(worst, std::abs(d.eps_plus.imag()));
      CHECK(worst < 1e-10);
      CHECK_FALSE(scan.has_complex_window);
    }
  }
  SECTION("complex window endpoints match the closed form") {
    const BandScan scan = scan_bz({M_PI / 4, -M_PI / 7, std::log(1.5), 0.0}, 401);
    REQUIRE(scan.has_complex_window);
    const double edge = window_edge(M_PI / 4, -M_PI / 7, std::log(1.5));
    const double grid_step = 2 * M_PI / 401;
    CHECK(std::abs(scan.complex_k_min + edge) < grid_step);
    CHECK(std::abs(scan.complex_k_max - edge) < grid_step);
  }
  SECTION("reality threshold around the exceptional gain") {
    const double gstar = std::log(exceptional_gamma(M_PI / 4, -M_PI / 7));
    const BandScan below = scan_bz({M_PI / 4, -M_PI / 7, gstar - 0.05, 0.0}, 401);
    double worst = 0.0;
    for (const auto& d : below.points) worst = std::max(worst, std::abs(d.eps_plus.imag()));
    CHECK(worst < 1e-10);
    const BandScan above = scan_bz({M_PI / 4, -M_PI / 7, gstar + 0.05, 0.0}, 401);
    REQUIRE(above.has_complex_window);
  }
  SECTION("band functions are symmetric under the (modified) reflection") {
    // phi = 0: eps(k) = eps(-k); phi != 0: eps(k) = eps(-k - 2 phi), the
    // momentum-space fingerprint of the parity-chiral pairing.
    for (double phi : {0.0, 0.37}) {
      const HomogeneousParams p{0.6, -0.35, 0.2, phi};
      const BandScan scan = scan_bz(p, 100);
      for (const auto& d : scan.points) {
        const DispersionPoint mirrored = dispersion(-d.k - 2 * phi, p);
        CHECK(std::abs(mirrored.eps_plus - d.eps_plus) < 1e-10);
      }
    }
  }
}
