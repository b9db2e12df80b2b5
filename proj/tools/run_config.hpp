#pragma once

// Flat JSON run configuration for the frx command-line tool.

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "frx/frx.hpp"

namespace frx::cli {

struct SampleGrid {
  std::vector<double> x;
  std::vector<double> t;
};

struct VerifySettings {
  int quad_n = 128;
  double perturb_w0 = 1.0;  // multiplies the delta weight before checking
};

struct OracleSettings {
  int cells = 2000;
  double cfl = 0.45;
  double t_end = 1.0;
  std::string grid = "lab";  // lab | fitted
  double x_lo = -2.0;
  double x_hi = 2.0;
  double exclusion = 0.1;
  double delta_halfwidth = 0.1;
  double search_cells = 20.0;
};

struct LimitSettings {
  std::string sweep_kind = "default";  // default | approach | list
  std::vector<double> sweep;
  int count = 12;
};

struct RunConfig {
  RiemannProblem problem;
  SampleGrid sample;
  VerifySettings verify;
  OracleSettings oracle;
  LimitSettings limit;
};

namespace detail {

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "rho_l", "u_l", "rho_r", "u_r", "A", "alpha", "beta",
      "x", "x_min", "x_max", "nx", "t",
      "quad_n", "perturb_w0",
      "cells", "cfl", "t_end", "grid", "x_lo", "x_hi", "exclusion", "delta_halfwidth",
      "search_cells",
      "sweep", "count"};
  return keys;
}

inline double number(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw Error(ErrorCode::InvalidConfig, "'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw Error(ErrorCode::NonFiniteInput, "'" + key + "' is not finite");
  return d;
}

inline double number_or(const nlohmann::json& doc, const std::string& key, double fallback) {
  return doc.contains(key) ? number(doc, key) : fallback;
}

inline int integer_or(const nlohmann::json& doc, const std::string& key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw Error(ErrorCode::InvalidConfig, "'" + key + "' must be an integer");
  return v.get<int>();
}

inline std::vector<double> number_list(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_array()) throw Error(ErrorCode::InvalidConfig, "'" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw Error(ErrorCode::InvalidConfig, "'" + key + "' holds a non-number");
    out.push_back(e.get<double>());
    if (!std::isfinite(out.back())) {
      throw Error(ErrorCode::NonFiniteInput, "'" + key + "' holds a non-finite value");
    }
  }
  return out;
}

inline void require_increasing(const std::vector<double>& v, const std::string& what) {
  if (v.empty()) throw Error(ErrorCode::InvalidConfig, what + " grid is empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      throw Error(ErrorCode::InvalidConfig, what + " grid must be strictly increasing");
    }
  }
}

}  // namespace detail

/// Reads and checks a configuration document. Unknown keys are rejected so a
/// misspelt setting cannot silently fall back to its default.
inline RunConfig parse_config(const nlohmann::json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!known_keys().count(item.key())) {
      throw Error(ErrorCode::InvalidConfig, "unknown config key '" + item.key() + "'");
    }
  }
  for (const char* key : {"rho_l", "u_l", "rho_r", "u_r"}) {
    if (!doc.contains(key)) throw Error(ErrorCode::InvalidConfig, std::string("missing '") + key + "'");
  }

  RunConfig cfg;
  cfg.problem.left = {number(doc, "rho_l"), number(doc, "u_l")};
  cfg.problem.right = {number(doc, "rho_r"), number(doc, "u_r")};
  cfg.problem.params.A = number_or(doc, "A", 0.0);
  cfg.problem.params.alpha = number_or(doc, "alpha", 0.5);
  cfg.problem.params.beta = number_or(doc, "beta", 0.0);
  validate_problem(cfg.problem);

  if (doc.contains("x")) {
    cfg.sample.x = number_list(doc, "x");
  } else if (doc.contains("x_min") || doc.contains("x_max") || doc.contains("nx")) {
    const double lo = number_or(doc, "x_min", -1.0), hi = number_or(doc, "x_max", 1.0);
    const int n = integer_or(doc, "nx", 201);
    if (n < 2) throw Error(ErrorCode::InvalidConfig, "nx must be at least 2");
    for (int i = 0; i < n; ++i) cfg.sample.x.push_back(lo + (hi - lo) * i / (n - 1));
  }
  if (doc.contains("t")) cfg.sample.t = number_list(doc, "t");

  cfg.verify.quad_n = integer_or(doc, "quad_n", cfg.verify.quad_n);
  cfg.verify.perturb_w0 = number_or(doc, "perturb_w0", cfg.verify.perturb_w0);

  OracleSettings& o = cfg.oracle;
  o.cells = integer_or(doc, "cells", o.cells);
  o.cfl = number_or(doc, "cfl", o.cfl);
  o.t_end = number_or(doc, "t_end", o.t_end);
  if (doc.contains("grid")) {
    if (!doc["grid"].is_string()) throw Error(ErrorCode::InvalidConfig, "'grid' must be a string");
    o.grid = doc["grid"].get<std::string>();
    if (o.grid != "lab" && o.grid != "fitted") {
      throw Error(ErrorCode::InvalidConfig, "'grid' must be \"lab\" or \"fitted\"");
    }
  }
  o.x_lo = number_or(doc, "x_lo", o.x_lo);
  o.x_hi = number_or(doc, "x_hi", o.x_hi);
  o.exclusion = number_or(doc, "exclusion", o.exclusion);
  o.delta_halfwidth = number_or(doc, "delta_halfwidth", o.delta_halfwidth);
  o.search_cells = number_or(doc, "search_cells", o.search_cells);
  if (o.exclusion < 0.0 || !(o.delta_halfwidth > 0.0) || !(o.search_cells > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "oracle window sizes must be positive");
  }

  LimitSettings& l = cfg.limit;
  l.count = integer_or(doc, "count", l.count);
  if (l.count < 2 || l.count > 60) throw Error(ErrorCode::InvalidConfig, "count must lie in [2, 60]");
  if (doc.contains("sweep")) {
    if (doc["sweep"].is_string()) {
      l.sweep_kind = doc["sweep"].get<std::string>();
      if (l.sweep_kind != "default" && l.sweep_kind != "approach") {
        throw Error(ErrorCode::InvalidConfig, "'sweep' must be a list, \"default\" or \"approach\"");
      }
    } else {
      l.sweep_kind = "list";
      l.sweep = number_list(doc, "sweep");
    }
  }
  return cfg;
}

/// Checks that only make sense for the sample command.
inline void require_sample_grid(const RunConfig& cfg) {
  detail::require_increasing(cfg.sample.x, "x");
  detail::require_increasing(cfg.sample.t, "t");
  if (!(cfg.sample.t.front() > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "sample times must be positive");
  }
}

}  // namespace frx::cli
