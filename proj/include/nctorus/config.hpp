#pragma once

// Run configuration. The file format is flat key=value text grouped by
// [section] headers; every key mirrors a CLI flag of the same name:
//
//   [torus]   theta12 theta13 theta23 n k seed cases max-power
//   [pr]      alpha eps trunc samples
//   [tol]     winding chern trace projection pr-unitary gauge residue unitary
//
// '#' starts a comment. Unknown sections or keys are configuration errors.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>

#include "nctorus/core/deformation.hpp"
#include "nctorus/errors.hpp"
#include "nctorus/gauge.hpp"
#include "nctorus/io.hpp"
#include "nctorus/powers_rieffel.hpp"

namespace nctorus {

/// Tolerance names with their defaults.
inline const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"winding", 1e-3},     // |W[U^n] - n|
      {"chern", 1e-4},       // |chern2(e) - 1|
      {"trace", 1e-12},      // |trace(e) - alpha|
      {"projection", 5e-2},  // l1(e^2 - e) accepted when building U
      {"pr-unitary", 0.5},   // defect_unitary accepted for U^n in winding
      {"gauge", 1e-10},      // gauge defect relative to its scale
      {"residue", 1e-2},     // relative error of the zeta residue
      {"unitary", 1e-10},    // defect_unitary accepted for random gauge unitaries
  };
  return t;
}

struct RunConfig {
  DeformationMatrix theta{};
  int n = 1;
  PRConfig pr{};
  Coupling k{1.0};
  std::map<std::string, double> tolerances = default_tolerances();
  std::uint64_t seed = 20240607;
  int cases = 50;
  int max_power = 2;

  double tol(const std::string& name) const {
    auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
    return it->second;
  }

  /// Throws ConfigError on any out-of-range field.
  void validate() const {
    if (n < 1) throw ConfigError("n must be positive");
    if (cases < 1) throw ConfigError("cases must be positive");
    if (max_power < 1) throw ConfigError("max-power must be positive");
    for (const auto& [name, v] : tolerances) {
      if (!default_tolerances().count(name)) throw ConfigError("unknown tolerance '" + name + "'");
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("tolerance '" + name + "' must be positive");
    }
    pr.validate();
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double config_double(std::string_view v, const std::string& key) {
  double x = 0.0;
  if (!parse_number(v, x) || !std::isfinite(x)) throw ConfigError("invalid value for " + key + ": '" + std::string(v) + "'");
  return x;
}

inline long long config_integer(std::string_view v, const std::string& key) {
  long long x = 0;
  if (!parse_number(v, x)) throw ConfigError("invalid integer for " + key + ": '" + std::string(v) + "'");
  return x;
}

inline int config_int(std::string_view v, const std::string& key) {
  const long long x = config_integer(v, key);
  if (x < -(1LL << 30) || x > (1LL << 30)) throw ConfigError(key + " out of range");
  return static_cast<int>(x);
}

}  // namespace detail

/// Applies one `key = value` under `section`.
inline void apply_setting(RunConfig& cfg, const std::string& section, const std::string& key, std::string_view v) {
  if (section == "torus") {
    if (key == "theta12" || key == "theta13" || key == "theta23") {
      const double x = detail::config_double(v, key);
      double t12 = cfg.theta.theta12(), t13 = cfg.theta.theta13(), t23 = cfg.theta.theta23();
      (key == "theta12" ? t12 : key == "theta13" ? t13 : t23) = x;
      cfg.theta = DeformationMatrix(t12, t13, t23);
    } else if (key == "n") {
      cfg.n = detail::config_int(v, key);
    } else if (key == "k") {
      cfg.k = Coupling(detail::config_double(v, key));
    } else if (key == "seed") {
      unsigned long long s = 0;
      if (!detail::parse_number(v, s)) throw ConfigError("invalid seed '" + std::string(v) + "'");
      cfg.seed = s;
    } else if (key == "cases") {
      cfg.cases = detail::config_int(v, key);
    } else if (key == "max-power") {
      cfg.max_power = detail::config_int(v, key);
    } else {
      throw ConfigError("unknown key '" + key + "' in [torus]");
    }
  } else if (section == "pr") {
    if (key == "alpha") cfg.pr.alpha = detail::config_double(v, key);
    else if (key == "eps") cfg.pr.eps = detail::config_double(v, key);
    else if (key == "trunc") cfg.pr.trunc = detail::config_int(v, key);
    else if (key == "samples") cfg.pr.samples = detail::config_int(v, key);
    else throw ConfigError("unknown key '" + key + "' in [pr]");
  } else if (section == "tol") {
    if (!default_tolerances().count(key)) throw ConfigError("unknown tolerance '" + key + "'");
    cfg.tolerances[key] = detail::config_double(v, key);
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
}

/// Parses config text onto `cfg`; errors carry the line number.
inline void parse_config(std::istream& is, RunConfig& cfg) {
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view s = line;
    if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = detail::trim(s);
    if (s.empty()) continue;
    try {
      if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError("unterminated section header");
        section = std::string(detail::trim(s.substr(1, s.size() - 2)));
        if (section != "torus" && section != "pr" && section != "tol") {
          throw ConfigError("unknown section [" + section + "]");
        }
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected key = value");
      if (section.empty()) throw ConfigError("setting before any [section] header");
      const std::string key(detail::trim(s.substr(0, eq)));
      apply_setting(cfg, section, key, detail::trim(s.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

inline void load_config(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    parse_config(is, cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace nctorus
