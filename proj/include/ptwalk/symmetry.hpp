#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptwalk/momentum.hpp"
#include "ptwalk/operators.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/spinor.hpp"

namespace ptwalk {

enum class SymmetryKind {
  Parity,
  TimeReversal,
  PT,
  Chiral,
  PHS,
  PCS,
  ModifiedPCS,
  ModifiedPHS,
};

inline const char* to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Parity: return "Parity";
    case SymmetryKind::TimeReversal: return "TimeReversal";
    case SymmetryKind::PT: return "PT";
    case SymmetryKind::Chiral: return "Chiral";
    case SymmetryKind::PHS: return "PHS";
    case SymmetryKind::PCS: return "PCS";
    case SymmetryKind::ModifiedPCS: return "ModifiedPCS";
    case SymmetryKind::ModifiedPHS: return "ModifiedPHS";
  }
  return "?";
}

inline bool is_antiunitary(SymmetryKind kind) {
  return kind == SymmetryKind::TimeReversal || kind == SymmetryKind::PT ||
         kind == SymmetryKind::PHS || kind == SymmetryKind::ModifiedPHS;
}

// Internal-space part of the symmetry operator (complex conjugation handled
// separately via is_antiunitary).
inline SpinorMatrix internal_matrix(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Parity: return sigma1();
    case SymmetryKind::TimeReversal: return sigma1();
    case SymmetryKind::PT: return sigma0();
    case SymmetryKind::Chiral: return kI * sigma2();
    case SymmetryKind::PHS: return sigma3();
    case SymmetryKind::PCS: return sigma3();
    case SymmetryKind::ModifiedPCS: return sigma3();
    case SymmetryKind::ModifiedPHS: return sigma3();
  }
  return sigma0();
}

struct ConditionViolation {
  std::string parameter;  // theta / gainL / gainR / phiL / phiR, or coin/shift/gain/phase
  int site = -1;
  int substep = -1;  // 1-based when meaningful
};

struct SymmetryReport {
  SymmetryKind kind = SymmetryKind::PT;
  bool holds = false;
  std::optional<int> witness;  // reflection point q or translation r
  double max_residual = 0.0;
  std::vector<ConditionViolation> violations;
};

// ---------------------------------------------------------------------------
// Momentum-space operator identities, evaluated in the symmetry time frame.
// ---------------------------------------------------------------------------

inline SymmetryReport check_bloch_symmetry(const HomogeneousParams& p, SymmetryKind kind,
                                           const std::vector<double>& grid,
                                           double tol = 1e-9) {
  validate(p);
  if (grid.empty()) throw InvalidParameter("momentum grid must not be empty");
  SymmetryReport rep;
  rep.kind = kind;
  const SpinorMatrix id = sigma0();
  double worst = 0.0;
  for (double k : grid) {
    const SpinorMatrix u = bloch_step(k, p, Frame::Symmetry);
    SpinorMatrix lhs, rhs;
    switch (kind) {
      case SymmetryKind::Parity:
        lhs = sigma1() * u * sigma1();
        rhs = bloch_step(-k, p, Frame::Symmetry);
        break;
      case SymmetryKind::TimeReversal:
        lhs = sigma1() * u.conjugate() * sigma1();
        rhs = bloch_step(-k, p, Frame::Symmetry).inverse();
        break;
      case SymmetryKind::PT:
        lhs = u.conjugate() * u;
        rhs = id;
        break;
      case SymmetryKind::Chiral:
        lhs = sigma2() * u * sigma2();  // (i sigma2) u (i sigma2)^{-1}
        rhs = u.inverse();
        break;
      case SymmetryKind::PHS:
      case SymmetryKind::ModifiedPHS:
        lhs = sigma3() * u.conjugate() * sigma3();
        rhs = bloch_step(-k, p, Frame::Symmetry);
        break;
      case SymmetryKind::PCS:
        lhs = sigma3() * u * sigma3() * bloch_step(-k, p, Frame::Symmetry);
        rhs = id;
        break;
      case SymmetryKind::ModifiedPCS:
        lhs = sigma3() * u * sigma3() * bloch_step(-k - 2 * p.phi, p, Frame::Symmetry);
        rhs = id;
        break;
    }
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  rep.max_residual = worst;
  rep.holds = worst < tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Elemental-operator conditions (one row of the six-symmetry condition table).
// ---------------------------------------------------------------------------

inline SymmetryReport check_table_conditions(const HomogeneousParams& p, SymmetryKind kind) {
  validate(p);
  if (kind == SymmetryKind::ModifiedPCS || kind == SymmetryKind::ModifiedPHS)
    throw InvalidParameter("elemental conditions are tabulated for the six basic symmetries");
  SymmetryReport rep;
  rep.kind = kind;
  const SpinorMatrix x = internal_matrix(kind);
  const SpinorMatrix xinv = x.inverse();
  const bool anti = is_antiunitary(kind);
  const auto transform = [&](const SpinorMatrix& op) -> SpinorMatrix {
    return anti ? SpinorMatrix(x * op.conjugate() * xinv) : SpinorMatrix(x * op * xinv);
  };

  // Required image of each elemental operator under the symmetry. The coin
  // sign s_coin means X C(theta) X^{-1} = C(s_coin * theta); likewise for the
  // shift; the gain always must map to itself; conj_phase selects Phi vs Phi*.
  int s_coin = 1, s_shift = 1;
  bool conj_phase = false;
  switch (kind) {
    case SymmetryKind::Parity: s_coin = +1; s_shift = -1; conj_phase = false; break;
    case SymmetryKind::TimeReversal: s_coin = -1; s_shift = +1; conj_phase = true; break;
    case SymmetryKind::PT: s_coin = -1; s_shift = -1; conj_phase = true; break;
    case SymmetryKind::Chiral: s_coin = -1; s_shift = -1; conj_phase = true; break;
    case SymmetryKind::PHS: s_coin = +1; s_shift = -1; conj_phase = false; break;
    case SymmetryKind::PCS: s_coin = -1; s_shift = +1; conj_phase = true; break;
    default: break;
  }

  const double sample_k[] = {0.3, -1.1, 2.2};
  double worst_coin = 0.0, worst_shift = 0.0, worst_gain = 0.0, worst_phase = 0.0;
  for (double th : {p.theta1, p.theta2}) {
    worst_coin = std::max(worst_coin,
                          max_abs(transform(coin_matrix(th)) - coin_matrix(s_coin * th)));
  }
  for (double k : sample_k) {
    worst_shift = std::max(worst_shift,
                           max_abs(transform(shift_bloch(k)) - shift_bloch(s_shift * k)));
  }
  const SpinorMatrix g = gain_matrix(std::exp(p.gamma), std::exp(-p.gamma));
  worst_gain = max_abs(transform(g) - g);
  const SpinorMatrix ph = phase_matrix(p.phi, -p.phi);
  worst_phase = max_abs(transform(ph) - (conj_phase ? ph.conjugate() : ph));

  const double tol = 1e-12;
  if (worst_coin > tol) rep.violations.push_back({"coin", -1, -1});
  if (worst_shift > tol) rep.violations.push_back({"shift", -1, -1});
  if (worst_gain > tol) rep.violations.push_back({"gain", -1, -1});
  if (worst_phase > tol) rep.violations.push_back({"phase", -1, -1});
  rep.max_residual = std::max({worst_coin, worst_shift, worst_gain, worst_phase});
  rep.holds = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Position-space parameter conditions on a ring.
// ---------------------------------------------------------------------------

namespace detail {

// Parameter conditions linking substeps 1 and 2 through the reflection
// n -> q - n. phase_sign = +1 selects the combined parity/time-reversal
// variant, -1 the parity/chiral variant.
inline std::vector<ConditionViolation> reflection_violations(const WalkConfig& c, int q,
                                                             int phase_sign) {
  std::vector<ConditionViolation> v;
  const double tol = 1e-12;
  const int n_sites = c.sites();
  for (int j = 0; j < n_sites; ++j) {
    const int n = c.site_of(j);
    for (int i = 0; i < 2; ++i)
      if (std::abs(c.theta(i, n) - c.theta(i, q - n)) > tol)
        v.push_back({"theta", n, i + 1});
    if (std::abs(std::log(c.gain(0, 0, n) * c.gain(1, 0, q - n + 1))) > tol)
      v.push_back({"gainL", n, 1});
    if (std::abs(std::log(c.gain(0, 1, n) * c.gain(1, 1, q - n - 1))) > tol)
      v.push_back({"gainR", n, 1});
    if (std::abs(c.phase(0, 0, n) - phase_sign * c.phase(1, 0, q - n + 1)) > tol)
      v.push_back({"phiL", n, 1});
    if (std::abs(c.phase(0, 1, n) - phase_sign * c.phase(1, 1, q - n - 1)) > tol)
      v.push_back({"phiR", n, 1});
  }
  return v;
}

inline SymmetryReport reflection_search(const WalkConfig& c, SymmetryKind kind, int phase_sign) {
  SymmetryReport rep;
  rep.kind = kind;
  std::vector<ConditionViolation> best;
  int best_q = 0;
  bool first = true;
  for (int q = 0; q < c.sites(); ++q) {
    auto v = reflection_violations(c, q, phase_sign);
    if (v.empty()) {
      rep.holds = true;
      rep.witness = q;
      return rep;
    }
    if (first || v.size() < best.size()) {
      best = std::move(v);
      best_q = q;
      first = false;
    }
  }
  rep.holds = false;
  rep.witness = best_q;
  rep.violations = std::move(best);
  rep.max_residual = 1.0;
  return rep;
}

}  // namespace detail

inline SymmetryReport check_position_pt(const WalkConfig& c) {
  return detail::reflection_search(c, SymmetryKind::PT, +1);
}

inline SymmetryReport check_position_pcs(const WalkConfig& c) {
  return detail::reflection_search(c, SymmetryKind::PCS, -1);
}

// Translation witness r with theta and gain fields r-periodic and phases
// r-antiperiodic.
inline SymmetryReport find_modified_phs_shift(const WalkConfig& c) {
  SymmetryReport rep;
  rep.kind = SymmetryKind::ModifiedPHS;
  const double tol = 1e-12;
  std::vector<ConditionViolation> best;
  int best_r = 1;
  bool first = true;
  for (int r = 1; r < c.sites(); ++r) {
    std::vector<ConditionViolation> v;
    for (int j = 0; j < c.sites(); ++j) {
      const int n = c.site_of(j);
      for (int i = 0; i < 2; ++i) {
        if (std::abs(c.theta(i, n) - c.theta(i, n + r)) > tol)
          v.push_back({"theta", n, i + 1});
        for (int spin = 0; spin < 2; ++spin) {
          if (std::abs(std::log(c.gain(i, spin, n) / c.gain(i, spin, n + r))) > tol)
            v.push_back({spin == 0 ? "gainL" : "gainR", n, i + 1});
          if (std::abs(c.phase(i, spin, n) + c.phase(i, spin, n + r)) > tol)
            v.push_back({spin == 0 ? "phiL" : "phiR", n, i + 1});
        }
      }
    }
    if (v.empty()) {
      rep.holds = true;
      rep.witness = r;
      return rep;
    }
    if (first || v.size() < best.size()) {
      best = std::move(v);
      best_r = r;
      first = false;
    }
  }
  rep.holds = false;
  rep.witness = best_r;
  rep.violations = std::move(best);
  rep.max_residual = 1.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Dense operator-level verification.
// ---------------------------------------------------------------------------

namespace detail {

// (R_q M R_q)[a,b] = M[refl(a), refl(b)] with refl acting on sites only.
inline DenseOperator reflect_conjugate(const DenseOperator& m, const WalkConfig& c, int q) {
  const int n_sites = c.sites();
  std::vector<int> perm(2 * n_sites);
  for (int j = 0; j < n_sites; ++j) {
    const int jr = c.storage_index(q - c.site_of(j));
    perm[2 * j] = 2 * jr;
    perm[2 * j + 1] = 2 * jr + 1;
  }
  DenseOperator out(m.rows(), m.cols());
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b) out(a, b) = m(perm[a], perm[b]);
  return out;
}

inline DenseOperator translate_conjugate(const DenseOperator& m, const WalkConfig& c, int r) {
  const int n_sites = c.sites();
  std::vector<int> perm(2 * n_sites);
  for (int j = 0; j < n_sites; ++j) {
    const int jt = (j - r % n_sites + n_sites) % n_sites;  // (T_r M T_r^{-1})[a,..] = M[a - r,..]
    perm[2 * j] = 2 * jt;
    perm[2 * j + 1] = 2 * jt + 1;
  }
  DenseOperator out(m.rows(), m.cols());
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b) out(a, b) = m(perm[a], perm[b]);
  return out;
}

inline void conjugate_internal_sigma3(DenseOperator& m) {
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b)
      if (((a + b) % 2) == 1) m(a, b) = -m(a, b);
}

}  // namespace detail

// Residual of the operator identity for one symmetry on the dense walk
// (symmetry time frame). PT and PCS take a reflection point q, PHS and
// modified PHS a translation r (r = 0 is the plain PHS).
inline double verify_dense_symmetry(const WalkConfig& c, SymmetryKind kind, int witness) {
  const int n_sites = c.sites();
  if (n_sites > 1024) throw InvalidParameter("dense verification limited to N <= 1024");
  const DenseOperator u = assemble_dense(c, Frame::Symmetry);
  const DenseOperator id = DenseOperator::Identity(2 * n_sites, 2 * n_sites);
  switch (kind) {
    case SymmetryKind::PT: {
      if (witness < -n_sites || witness >= n_sites)
        throw InvalidParameter("reflection point out of range");
      const DenseOperator x = detail::reflect_conjugate(u.conjugate(), c, witness);
      return max_abs(x * u - id);
    }
    case SymmetryKind::PCS: {
      if (witness < -n_sites || witness >= n_sites)
        throw InvalidParameter("reflection point out of range");
      DenseOperator x = detail::reflect_conjugate(u, c, witness);
      detail::conjugate_internal_sigma3(x);
      return max_abs(x * u - id);
    }
    case SymmetryKind::PHS:
    case SymmetryKind::ModifiedPHS: {
      if (witness < 0 || witness >= n_sites)
        throw InvalidParameter("translation shift out of range");
      DenseOperator x = u.conjugate();
      detail::conjugate_internal_sigma3(x);
      x = detail::translate_conjugate(x, c, witness);
      return max_abs(x - u);
    }
    default:
      throw InvalidParameter("dense verification supports PT, PCS, PHS and modified PHS");
  }
}

// ---------------------------------------------------------------------------
// Action of the PT operator on Bloch eigenvectors.
// ---------------------------------------------------------------------------

struct PtEigenphase {
  bool broken = false;
  Complex phase_plus;   // valid when !broken
  Complex phase_minus;  // valid when !broken
};

// Applies complex conjugation (the PT operator in the symmetry time frame)
// to both band eigenvectors. In the unbroken regime each maps to itself up
// to the phases +-e^{2 i eta}; in the broken regime the two map onto each
// other and the broken flag is set.
inline PtEigenphase pt_eigenphase(double k, const HomogeneousParams& p) {
  const auto [plus, minus] = eigenvectors(k, p, Frame::Symmetry);
  PtEigenphase out;
  const auto phase_of = [](const Spinor& v) -> std::pair<Complex, double> {
    int imax = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
    const Complex c = std::conj(v(imax)) / v(imax);
    const double res = (v.conjugate() - c * v).norm();
    return {c, res};
  };
  const auto [cp, rp] = phase_of(plus);
  const auto [cm, rm] = phase_of(minus);
  if (rp < 1e-9 && rm < 1e-9) {
    out.broken = false;
    out.phase_plus = cp;
    out.phase_minus = cm;
    return out;
  }
  out.broken = true;
  return out;
}

}  // namespace ptwalk
