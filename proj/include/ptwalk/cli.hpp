#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "ptwalk/config_io.hpp"
#include "ptwalk/evolution.hpp"
#include "ptwalk/momentum.hpp"
#include "ptwalk/spectral.hpp"
#include "ptwalk/symmetry.hpp"

namespace ptwalk {

struct CliOptions {
  std::string out_dir = ".";
  int grid = 401;
  int steps = 200;
  Frame frame = Frame::Original;
  double tol = 1e-9;
};

namespace detail {

inline const HomogeneousParams& homogeneous_or_throw(const ParsedConfig& cfg,
                                                     const char* subcommand) {
  if (!std::holds_alternative<HomogeneousParams>(cfg))
    throw InvalidParameter(std::string(subcommand) +
                           " requires a homogeneous config (momentum-space closed forms "
                           "are defined for translation-invariant walks only)");
  return std::get<HomogeneousParams>(cfg);
}

inline const WalkConfig& lattice_or_throw(const ParsedConfig& cfg, const char* subcommand) {
  if (!std::holds_alternative<WalkConfig>(cfg))
    throw InvalidParameter(std::string(subcommand) +
                           " requires a finite-lattice config (preset or explicit)");
  return std::get<WalkConfig>(cfg);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidState("cannot open output file: " + path);
  out << text;
}

inline std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline std::vector<std::string> cmd_dispersion(const ParsedConfig& cfg, const CliOptions& opt) {
  const HomogeneousParams& p = detail::homogeneous_or_throw(cfg, "dispersion");
  const BandScan scan = scan_bz(p, opt.grid);
  std::vector<std::vector<double>> rows;
  rows.reserve(scan.points.size());
  for (const DispersionPoint& d : scan.points)
    rows.push_back({d.k, d.eps_plus.real(), d.eps_plus.imag(), d.eps_minus.real(),
                    d.eps_minus.imag(), d.eta,
                    std::abs(d.xi.imag()) < 1e-12 ? 1.0 : 0.0});
  const std::string path = opt.out_dir + "/dispersion.csv";
  write_csv(path, {"k", "re_eps_plus", "im_eps_plus", "re_eps_minus", "im_eps_minus",
                   "eta", "xi_real_flag"},
            rows);
  return {path};
}

inline std::vector<std::string> cmd_evolve(const ParsedConfig& cfg, const CliOptions& opt) {
  WalkConfig walk = std::holds_alternative<HomogeneousParams>(cfg)
                        ? WalkConfig::homogeneous(std::get<HomogeneousParams>(cfg),
                                                  auto_lattice_size(opt.steps))
                        : std::get<WalkConfig>(cfg);
  Spinor start;
  start << 0.0, 1.0;
  const WalkState initial = init_state(walk.sites(), 0, start);
  const EvolutionRecord rec = run(walk, initial, opt.steps);

  std::vector<std::vector<double>> rows;
  for (size_t t = 0; t < rec.total_probability.size(); ++t) {
    WalkState snapshot;  // moments of the recorded distribution
    snapshot.sites = walk.sites();
    snapshot.amplitudes = Eigen::VectorXcd::Zero(2 * walk.sites());
    for (int j = 0; j < walk.sites(); ++j)
      snapshot.amplitudes(2 * j) = std::sqrt(rec.distributions[t](j));
    const Moments m = distribution_moments(snapshot);
    rows.push_back({static_cast<double>(t), rec.total_probability[t], m.mean, m.variance,
                    m.excess_kurtosis});
  }
  const std::string series_path = opt.out_dir + "/evolve.csv";
  write_csv(series_path, {"t", "total_probability", "mean", "variance", "excess_kurtosis"},
            rows);

  std::vector<std::vector<double>> dist;
  for (int j = 0; j < walk.sites(); ++j)
    dist.push_back({static_cast<double>(j - walk.sites() / 2),
                    rec.distributions.back()(j)});
  const std::string dist_path = opt.out_dir + "/distribution_final.csv";
  write_csv(dist_path, {"n", "probability"}, dist);

  const Moments fin = distribution_moments(rec.final_state);
  const nlohmann::json report{
      {"growth_class", to_string(classify_growth(rec.total_probability))},
      {"final_total_probability", rec.total_probability.back()},
      {"final_mean", fin.mean},
      {"final_variance", fin.variance},
      {"final_excess_kurtosis", fin.excess_kurtosis}};
  const std::string report_path = opt.out_dir + "/evolve.json";
  detail::write_text(report_path, detail::json_text(report));
  return {series_path, dist_path, report_path};
}

inline std::vector<std::string> cmd_spectrum(const ParsedConfig& cfg, const CliOptions& opt) {
  const WalkConfig& walk = detail::lattice_or_throw(cfg, "spectrum");
  const SpectrumResult res = eigenvalues(walk, opt.frame);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < res.eigenvalues.size(); ++i) {
    const Complex lam = res.eigenvalues(i);
    rows.push_back({lam.real(), lam.imag(), std::abs(lam) - 1.0});
  }
  const std::string path = opt.out_dir + "/spectrum.csv";
  write_csv(path, {"re_lambda", "im_lambda", "abs_deviation"}, rows);
  const auto [on_circle, dev] = unimodularity(res, opt.tol);
  const nlohmann::json report{{"count", res.eigenvalues.size()},
                              {"max_unimodularity_deviation", dev},
                              {"unimodular_at_tol", on_circle},
                              {"tol", opt.tol},
                              {"sampled_eigenpair_residual", res.sampled_eigenpair_residual}};
  const std::string report_path = opt.out_dir + "/spectrum.json";
  detail::write_text(report_path, detail::json_text(report));
  return {path, report_path};
}

namespace detail {

inline nlohmann::json report_json(const SymmetryReport& rep) {
  nlohmann::json j{{"holds", rep.holds}, {"max_residual", rep.max_residual}};
  if (rep.witness) j["witness"] = *rep.witness;
  if (!rep.violations.empty()) {
    nlohmann::json v = nlohmann::json::array();
    for (size_t i = 0; i < rep.violations.size() && i < 16; ++i)
      v.push_back({{"parameter", rep.violations[i].parameter},
                   {"site", rep.violations[i].site},
                   {"substep", rep.violations[i].substep}});
    j["violations"] = v;
    j["violation_count"] = rep.violations.size();
  }
  return j;
}

}  // namespace detail

inline std::vector<std::string> cmd_check_symmetry(const ParsedConfig& cfg,
                                                   const CliOptions& opt) {
  nlohmann::json report;
  if (std::holds_alternative<HomogeneousParams>(cfg)) {
    const HomogeneousParams& p = std::get<HomogeneousParams>(cfg);
    std::vector<double> grid;
    const int m = std::max(2, opt.grid);
    for (int j = 0; j < m; ++j) grid.push_back(-M_PI + 2 * M_PI * (j + 1) / m);
    for (SymmetryKind kind :
         {SymmetryKind::Parity, SymmetryKind::TimeReversal, SymmetryKind::PT,
          SymmetryKind::Chiral, SymmetryKind::PHS, SymmetryKind::PCS,
          SymmetryKind::ModifiedPCS, SymmetryKind::ModifiedPHS}) {
      report[to_string(kind)] = detail::report_json(check_bloch_symmetry(p, kind, grid, opt.tol));
    }
    nlohmann::json table;
    for (SymmetryKind kind :
         {SymmetryKind::Parity, SymmetryKind::TimeReversal, SymmetryKind::PT,
          SymmetryKind::Chiral, SymmetryKind::PHS, SymmetryKind::PCS}) {
      const SymmetryReport rep = check_table_conditions(p, kind);
      nlohmann::json row{{"coin", true}, {"shift", true}, {"gain", true}, {"phase", true}};
      for (const auto& v : rep.violations) row[v.parameter] = false;
      table[to_string(kind)] = row;
    }
    report["elemental_conditions"] = table;
  } else {
    const WalkConfig& walk = std::get<WalkConfig>(cfg);
    const SymmetryReport pt = check_position_pt(walk);
    const SymmetryReport pcs = check_position_pcs(walk);
    const SymmetryReport mphs = find_modified_phs_shift(walk);
    nlohmann::json jpt = detail::report_json(pt);
    nlohmann::json jpcs = detail::report_json(pcs);
    nlohmann::json jmphs = detail::report_json(mphs);
    if (walk.sites() <= 1024) {
      if (pt.witness) jpt["dense_residual"] = verify_dense_symmetry(walk, SymmetryKind::PT, *pt.witness);
      if (pcs.witness)
        jpcs["dense_residual"] = verify_dense_symmetry(walk, SymmetryKind::PCS, *pcs.witness);
      if (mphs.witness)
        jmphs["dense_residual"] =
            verify_dense_symmetry(walk, SymmetryKind::ModifiedPHS, *mphs.witness);
      report["PHS"] = {{"holds", verify_dense_symmetry(walk, SymmetryKind::PHS, 0) < opt.tol},
                       {"dense_residual", verify_dense_symmetry(walk, SymmetryKind::PHS, 0)}};
    }
    report["PT"] = jpt;
    report["PCS"] = jpcs;
    report["ModifiedPHS"] = jmphs;
  }
  const std::string path = opt.out_dir + "/check-symmetry.json";
  detail::write_text(path, detail::json_text(report));
  return {path};
}

inline std::vector<std::string> cmd_exceptional_point(const ParsedConfig& cfg,
                                                      const CliOptions& opt) {
  const HomogeneousParams& p = detail::homogeneous_or_throw(cfg, "exceptional-point");
  const double eg = exceptional_gamma(p.theta1, p.theta2);
  const nlohmann::json report{{"exp_gamma_star", eg},
                              {"gamma_star", std::log(eg)},
                              {"theta1", p.theta1},
                              {"theta2", p.theta2}};
  const std::string path = opt.out_dir + "/exceptional-point.json";
  detail::write_text(path, detail::json_text(report));
  return {path};
}

// Runs one subcommand, records outputs in the manifest, writes the manifest
// next to the outputs. Returns the process exit code.
inline int dispatch(RunManifest& manifest, const ParsedConfig& cfg, const CliOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(opt.out_dir);
  std::vector<std::string> outputs;
  if (manifest.subcommand == "dispersion")
    outputs = cmd_dispersion(cfg, opt);
  else if (manifest.subcommand == "evolve")
    outputs = cmd_evolve(cfg, opt);
  else if (manifest.subcommand == "spectrum")
    outputs = cmd_spectrum(cfg, opt);
  else if (manifest.subcommand == "check-symmetry")
    outputs = cmd_check_symmetry(cfg, opt);
  else if (manifest.subcommand == "exceptional-point")
    outputs = cmd_exceptional_point(cfg, opt);
  else
    throw InvalidParameter("unknown subcommand: " + manifest.subcommand);
  manifest.output_paths = outputs;
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_text(opt.out_dir + "/manifest.json", detail::json_text(to_json(manifest)));
  return 0;
}

}  // namespace ptwalk
