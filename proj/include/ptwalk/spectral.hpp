#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ptwalk/errors.hpp"
#include "ptwalk/operators.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/spinor.hpp"

namespace ptwalk {

struct SpectrumResult {
  Eigen::VectorXcd eigenvalues;
  double max_unimodularity_deviation = 0.0;  // max over ||lambda| - 1|
  bool entirely_real_quasienergy = false;    // deviation below 1e-9
  double sampled_eigenpair_residual = 0.0;   // max ||Uv - lambda v|| / ||v|| over samples
};

namespace detail {

// Parlett-Reinsch balancing: diagonal similarity D^{-1} A D equalizing row
// and column norms. The gain factors skew the row/column scales of the walk
// operator, so this runs before the QR iteration.
inline void balance(Eigen::MatrixXcd& a, Eigen::VectorXd& d) {
  const int n = static_cast<int>(a.rows());
  d = Eigen::VectorXd::Ones(n);
  const double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(a(i, j));
        col += std::abs(a(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      double f = 1.0;
      const double s = row + col;
      while (col < row / radix) {
        col *= radix;
        row /= radix;
        f *= radix;
      }
      while (col >= row * radix) {
        col /= radix;
        row *= radix;
        f /= radix;
      }
      if (row + col < 0.95 * s) {
        converged = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace detail

// Full eigen-decomposition of the dense walk operator (complex, non-normal):
// balancing, then the library's Hessenberg + shifted-QR path. Residuals of a
// sample of eigenpairs are recorded in the result.
inline SpectrumResult eigenvalues(const WalkConfig& c, Frame frame = Frame::Original) {
  if (c.sites() > 1024)
    throw InvalidParameter("dense eigendecomposition limited to N <= 1024");
  const DenseOperator u = assemble_dense(c, frame);
  Eigen::MatrixXcd balanced = u;
  Eigen::VectorXd scale;
  detail::balance(balanced, scale);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(40 * static_cast<int>(balanced.rows()));
  solver.compute(balanced, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw SolverFailure("QR iteration did not converge within the sweep cap");

  SpectrumResult res;
  res.eigenvalues = solver.eigenvalues();
  for (int i = 0; i < res.eigenvalues.size(); ++i)
    res.max_unimodularity_deviation =
        std::max(res.max_unimodularity_deviation, std::abs(std::abs(res.eigenvalues(i)) - 1.0));
  res.entirely_real_quasienergy = res.max_unimodularity_deviation < 1e-9;

  const int n = static_cast<int>(u.rows());
  const double u_scale = std::max(1.0, max_abs(u));
  const int samples = std::min(10, n);
  for (int s = 0; s < samples; ++s) {
    const int i = (s * n) / samples;
    Eigen::VectorXcd v = scale.asDiagonal() * solver.eigenvectors().col(i);
    const double resid = (u * v - solver.eigenvalues()(i) * v).norm() / (v.norm() * u_scale);
    res.sampled_eigenpair_residual = std::max(res.sampled_eigenpair_residual, resid);
  }
  return res;
}

// eps = i ln(lambda), principal branch Re(eps) in (-pi, pi].
inline std::vector<Complex> quasienergies(const SpectrumResult& s) {
  std::vector<Complex> eps;
  eps.reserve(s.eigenvalues.size());
  for (int i = 0; i < s.eigenvalues.size(); ++i) {
    const Complex lam = s.eigenvalues(i);
    if (lam == Complex{0.0, 0.0})
      throw SingularEigenvalue("zero eigenvalue: operator assembly is broken");
    eps.push_back(wrap_quasienergy(kI * std::log(lam)));
  }
  return eps;
}

inline std::pair<bool, double> unimodularity(const SpectrumResult& s, double tol) {
  return {s.max_unimodularity_deviation < tol, s.max_unimodularity_deviation};
}

}  // namespace ptwalk
