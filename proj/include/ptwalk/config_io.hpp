#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ptwalk/errors.hpp"
#include "ptwalk/params.hpp"
#include "ptwalk/presets.hpp"

namespace ptwalk {

inline constexpr const char* kToolVersion = "ptwalk 0.1.0";

using ParsedConfig = std::variant<HomogeneousParams, WalkConfig>;

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& path,
                             const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError("expected number at " + path + "/" + key);
  return j[key].get<double>();
}

inline double number_or(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ParseError(std::string("expected number at /") + key);
  return j[key].get<double>();
}

inline int int_or(const nlohmann::json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ParseError(std::string("expected integer at /") + key);
  return j[key].get<int>();
}

inline std::array<std::vector<double>, 2> substep_field(const nlohmann::json& j,
                                                        const char* key, int sites) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
    throw ParseError(std::string("expected a [substep1, substep2] array pair at /explicit/") + key);
  std::array<std::vector<double>, 2> out;
  for (int i = 0; i < 2; ++i) {
    const auto& arr = j[key][i];
    if (!arr.is_array() || static_cast<int>(arr.size()) != sites)
      throw ParseError(std::string("field /explicit/") + key + "/" + std::to_string(i) +
                       " must list one value per site");
    for (const auto& v : arr) {
      if (!v.is_number())
        throw ParseError(std::string("non-numeric entry in /explicit/") + key);
      out[i].push_back(v.get<double>());
    }
  }
  return out;
}

}  // namespace detail

// Accepts one of:
//   {"homogeneous": {"theta1": .., "theta2": .., "gamma": .., "phi": ..}}
//   {"preset": "experiment" | "four-region", ...overrides}
//   {"preset": {"name": "...", ...overrides}}
//   {"explicit": {"N": .., "theta": [[..],[..]], "gainL": .., "gainR": ..,
//                 "phiL": .., "phiR": ..}}
inline ParsedConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("config root must be a JSON object");
  if (doc.contains("homogeneous")) {
    const auto& h = doc["homogeneous"];
    if (!h.is_object()) throw ParseError("expected object at /homogeneous");
    HomogeneousParams p;
    p.theta1 = detail::require_number(h, "/homogeneous", "theta1");
    p.theta2 = detail::require_number(h, "/homogeneous", "theta2");
    p.gamma = detail::require_number(h, "/homogeneous", "gamma");
    p.phi = detail::require_number(h, "/homogeneous", "phi");
    validate(p);
    return p;
  }
  if (doc.contains("preset")) {
    nlohmann::json opts = doc;
    std::string name;
    if (doc["preset"].is_string()) {
      name = doc["preset"].get<std::string>();
    } else if (doc["preset"].is_object()) {
      opts = doc["preset"];
      if (!opts.contains("name") || !opts["name"].is_string())
        throw ParseError("expected string at /preset/name");
      name = opts["name"].get<std::string>();
    } else {
      throw ParseError("/preset must be a string or an object with a name");
    }
    if (name == "experiment") {
      const int sites = detail::int_or(opts, "N", 256);
      const double gamma0 = detail::number_or(opts, "gamma0", std::log(1.1));
      const double phi0 = detail::number_or(opts, "phi0", 6 * M_PI / 5);
      try {
        return experiment_config(sites, gamma0, phi0);
      } catch (const InvalidParameter& e) {
        throw ParseError(std::string("/preset experiment: ") + e.what());
      }
    }
    if (name == "four-region") {
      const int half = detail::int_or(opts, "L", 128);
      if (half < 4 || half % 2 != 0)
        throw ParseError("/preset four-region: L must be even and >= 4");
      return four_region_config(half);
    }
    throw ParseError("unknown preset '" + name + "'");
  }
  if (doc.contains("explicit")) {
    const auto& e = doc["explicit"];
    if (!e.is_object()) throw ParseError("expected object at /explicit");
    if (!e.contains("N") || !e["N"].is_number_integer())
      throw ParseError("expected integer at /explicit/N");
    const int sites = e["N"].get<int>();
    try {
      return WalkConfig(sites, detail::substep_field(e, "theta", sites),
                        detail::substep_field(e, "gainL", sites),
                        detail::substep_field(e, "gainR", sites),
                        detail::substep_field(e, "phiL", sites),
                        detail::substep_field(e, "phiR", sites));
    } catch (const InvalidParameter& err) {
      throw ParseError(std::string("/explicit: ") + err.what());
    }
  }
  throw ParseError("config must contain one of: homogeneous, preset, explicit");
}

inline ParsedConfig parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

// 17 significant digits, C locale, no trailing spaces: enough to round-trip
// any double and keep repeated runs byte-identical.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidState("cannot open output file: " + path);
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_g17(row[i]);
    }
    out << '\n';
  }
}

struct RunManifest {
  std::string subcommand;
  std::string config_path;  // "(inline)" when no file was read
  nlohmann::json resolved_parameters;
  std::vector<std::string> output_paths;
  std::string tool_version = kToolVersion;
  double wall_clock_seconds = 0.0;
};

inline nlohmann::json to_json(const RunManifest& m) {
  return nlohmann::json{{"subcommand", m.subcommand},
                        {"config", m.config_path},
                        {"resolved_parameters", m.resolved_parameters},
                        {"outputs", m.output_paths},
                        {"tool_version", m.tool_version},
                        {"wall_clock_seconds", m.wall_clock_seconds}};
}

}  // namespace ptwalk
