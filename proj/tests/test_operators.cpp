#include <catch2/catch_amalgamated.hpp>

#include "ptwalk/operators.hpp"
#include "ptwalk/presets.hpp"
#include "test_support.hpp"

using namespace ptwalk;
using test_support::multiset_distance;
using Catch::Approx;

namespace {
const double kSqrtHalf = 0.70710678118654752;
}

TEST_CASE("coin matrix closed forms", "[operators]") {
  CHECK(max_abs(coin_matrix(0.0) - sigma0()) == 0.0);

  SpinorMatrix half_turn;
  half_turn << 0, kI, kI, 0;
  CHECK(max_abs(coin_matrix(M_PI / 2) - half_turn) < 1e-15);

  const SpinorMatrix c = coin_matrix(M_PI / 4);
  CHECK(c(0, 0).real() == Approx(kSqrtHalf).margin(1e-15));
  CHECK(c(0, 1) == c(1, 0));
  CHECK(std::abs(c(0, 1) - kI * kSqrtHalf) < 1e-15);
  CHECK(std::abs(c.determinant() - 1.0) < 1e-15);

  CHECK_THROWS_AS(coin_matrix(std::nan("")), InvalidParameter);
}

TEST_CASE("gain matrix closed forms", "[operators]") {
  CHECK(max_abs(gain_matrix(1.0, 1.0) - sigma0()) == 0.0);

  const SpinorMatrix g = gain_matrix(std::exp(0.3), std::exp(-0.3));
  CHECK(g(0, 0).real() == Approx(1.3498588075760032).epsilon(1e-15));
  CHECK(g(1, 1).real() == Approx(0.74081822068171788).epsilon(1e-15));
  CHECK(std::abs(g.determinant() - 1.0) < 1e-15);

  const SpinorMatrix g2 = gain_matrix(1.1, 1.2);
  CHECK(g2(0, 0).real() == 1.1);
  CHECK(g2(1, 1).real() == 1.2);
  CHECK(g2.determinant().real() == Approx(1.32));

  CHECK_THROWS_AS(gain_matrix(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(gain_matrix(1.0, -0.5), InvalidParameter);
}

TEST_CASE("phase matrix closed forms", "[operators]") {
  CHECK(max_abs(phase_matrix(0.0, 0.0) - sigma0()) == 0.0);

  const double phi = 0.77;
  const SpinorMatrix p = phase_matrix(phi, -phi);
  CHECK(std::abs(p(0, 0) - std::exp(kI * phi)) < 1e-15);
  CHECK(std::abs(p(1, 1) - std::exp(-kI * phi)) < 1e-15);
  CHECK(std::abs(std::abs(p.determinant()) - 1.0) < 1e-15);

  const SpinorMatrix pe = phase_matrix(0.0, -6 * M_PI / 5);
  CHECK(std::abs(pe(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(pe(1, 1) - std::exp(-kI * (6 * M_PI / 5))) < 1e-15);
}

TEST_CASE("shift matrix closed forms", "[operators]") {
  CHECK(max_abs(shift_bloch(0.0) - sigma0()) == 0.0);
  CHECK(max_abs(shift_bloch(M_PI) + sigma0()) < 1e-15);
  const SpinorMatrix s = shift_bloch(M_PI / 2);
  CHECK(std::abs(s(0, 0) - kI) < 1e-15);
  CHECK(std::abs(s(1, 1) + kI) < 1e-15);
}

TEST_CASE("bloch step closed forms", "[operators]") {
  SECTION("pure double shift") {
    const HomogeneousParams p{0.0, 0.0, 0.0, 0.0};
    for (double k : {0.0, 0.4, -1.3, 2.9}) {
      const SpinorMatrix u = bloch_step(k, p);
      CHECK(std::abs(u(0, 0) - std::exp(kI * 2.0 * k)) < 1e-14);
      CHECK(std::abs(u(1, 1) - std::exp(-kI * 2.0 * k)) < 1e-14);
      CHECK(std::abs(u(0, 1)) < 1e-15);
    }
  }
  SECTION("unitary eigenvalues at k=0") {
    const HomogeneousParams p{M_PI / 4, -M_PI / 7, 0.0, 0.0};
    Eigen::ComplexEigenSolver<SpinorMatrix> es(bloch_step(0.0, p));
    // Oracle: eps = acos(cos t1 cos t2 - sin t1 sin t2), evaluated two ways.
    const double eps =
        std::acos(std::cos(p.theta1) * std::cos(p.theta2) - std::sin(p.theta1) * std::sin(p.theta2));
    CHECK(eps == Approx(0.33659921288462064).margin(1e-12));
    const double d = multiset_distance(
        {es.eigenvalues()(0), es.eigenvalues()(1)},
        {std::exp(-kI * eps), std::exp(kI * eps)});
    CHECK(d < 1e-12);
  }
  SECTION("gain pushes eigenvalues off the unit circle") {
    const HomogeneousParams p{M_PI / 4, -M_PI / 7, std::log(1.5), 0.0};
    Eigen::ComplexEigenSolver<SpinorMatrix> es(bloch_step(0.0, p));
    CHECK(std::abs(std::abs(es.eigenvalues()(0)) - 1.0) > 1e-3);
  }
}

TEST_CASE("bloch step invariants", "[operators]") {
  test_support::Rng rng(42);
  SECTION("unit determinant and frame similarity") {
    for (int trial = 0; trial < 1000; ++trial) {
      const HomogeneousParams p = rng.params();
      const double k = rng.uniform(-M_PI, M_PI);
      const SpinorMatrix u = bloch_step(k, p);
      CHECK(std::abs(u.determinant() - 1.0) < 1e-12);
      const SpinorMatrix conj =
          coin_matrix(p.theta1 / 2) * u * coin_matrix(-p.theta1 / 2);
      CHECK(max_abs(conj - bloch_step(k, p, Frame::Symmetry)) < 1e-12);
    }
  }
  SECTION("phase folds into the shift argument") {
    for (int trial = 0; trial < 200; ++trial) {
      const HomogeneousParams p = rng.params();
      const double k = rng.uniform(-M_PI, M_PI);
      const SpinorMatrix folded = coin_matrix(p.theta1 / 2) * shift_bloch(k + p.phi) *
                                  gain_matrix(std::exp(p.gamma), std::exp(-p.gamma)) *
                                  coin_matrix(p.theta2) *
                                  gain_matrix(std::exp(-p.gamma), std::exp(p.gamma)) *
                                  shift_bloch(k + p.phi) * coin_matrix(p.theta1 / 2);
      CHECK(max_abs(folded - bloch_step(k, p, Frame::Symmetry)) < 1e-12);
    }
  }
}

TEST_CASE("dense assembly closed forms", "[operators]") {
  SECTION("trivial walk is a double shift permutation") {
    const WalkConfig c = WalkConfig::homogeneous({0, 0, 0, 0}, 4);
    const DenseOperator u = assemble_dense(c);
    for (int n = -2; n < 2; ++n) {
      const int from_l = 2 * c.storage_index(n);
      const int to_l = 2 * c.storage_index(n - 2);
      CHECK(std::abs(u(to_l, from_l) - 1.0) < 1e-15);
      const int from_r = 2 * c.storage_index(n) + 1;
      const int to_r = 2 * c.storage_index(n + 2) + 1;
      CHECK(std::abs(u(to_r, from_r) - 1.0) < 1e-15);
    }
    CHECK(u.cwiseAbs().sum() == Approx(8.0));
  }
  SECTION("homogeneous spectrum matches the Bloch closed form") {
    const HomogeneousParams p{M_PI / 4, -M_PI / 7, 0.0, 0.0};
    const WalkConfig c = WalkConfig::homogeneous(p, 8);
    Eigen::ComplexEigenSolver<DenseOperator> es(assemble_dense(c));
    CHECK(multiset_distance(test_support::to_vector(es.eigenvalues()),
                            test_support::bloch_spectrum(p, 8)) < 1e-8);
  }
  SECTION("zero gain and phase gives a unitary operator") {
    const DenseOperator u = assemble_dense(experiment_config(8, 0.0, 0.0));
    CHECK(max_abs(u.adjoint() * u - DenseOperator::Identity(16, 16)) < 1e-12);
  }
}

TEST_CASE("dense assembly invariants", "[operators]") {
  test_support::Rng rng(7);
  SECTION("gamma = 0 with unit gains is unitary for any fields") {
    WalkConfig c = [&] {
      std::array<std::vector<double>, 2> th, gl, gr, pl, pr;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 12; ++j) {
          th[i].push_back(rng.uniform(-1.5, 1.5));
          gl[i].push_back(1.0);
          gr[i].push_back(1.0);
          pl[i].push_back(rng.uniform(-M_PI, M_PI));
          pr[i].push_back(rng.uniform(-M_PI, M_PI));
        }
      return WalkConfig(12, th, gl, gr, pl, pr);
    }();
    const DenseOperator u = assemble_dense(c);
    CHECK(max_abs(u.adjoint() * u - DenseOperator::Identity(24, 24)) < 1e-12);
  }
  SECTION("homogeneous dense spectrum equals Bloch spectrum") {
    for (int trial = 0; trial < 5; ++trial) {
      const HomogeneousParams p = rng.params();
      const WalkConfig c = WalkConfig::homogeneous(p, 16);
      Eigen::ComplexEigenSolver<DenseOperator> es(assemble_dense(c));
      CHECK(multiset_distance(test_support::to_vector(es.eigenvalues()),
                              test_support::bloch_spectrum(p, 16)) < 1e-8);
    }
  }
  SECTION("frames are similar") {
    const WalkConfig c = rng.config(8);
    Eigen::ComplexEigenSolver<DenseOperator> orig(assemble_dense(c, Frame::Original));
    Eigen::ComplexEigenSolver<DenseOperator> sym(assemble_dense(c, Frame::Symmetry));
    CHECK(multiset_distance(test_support::to_vector(orig.eigenvalues()),
                            test_support::to_vector(sym.eigenvalues())) < 1e-8);
  }
}
