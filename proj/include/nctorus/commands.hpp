#pragma once

// Reproduction commands behind the `nctorus` tool. Each returns a Report that
// renders as a text table or as JSON carrying the same numbers. Reports hold
// no timings or other run-dependent data, so a fixed RunConfig gives
// byte-identical output.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nctorus/config.hpp"
#include "nctorus/gauge.hpp"
#include "nctorus/invariants.hpp"
#include "nctorus/io.hpp"
#include "nctorus/powers_rieffel.hpp"
#include "nctorus/random.hpp"
#include "nctorus/spectral.hpp"

namespace nctorus {

/// Exit codes of the tool.
enum ExitCode : int { kExitOk = 0, kExitTolerance = 1, kExitConfig = 2 };

using ReportValue = std::variant<long long, double, bool, std::string>;

struct Report {
  Report() = default;
  explicit Report(std::string name) : command(std::move(name)) {}

  std::string command;
  std::vector<std::pair<std::string, ReportValue>> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportValue>> rows;
  bool passed = true;

  int exit_code() const { return passed ? kExitOk : kExitTolerance; }
};

namespace detail {

inline std::string value_text(const ReportValue& v) {
  struct {
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& x) const { return x; }
  } visit;
  return std::visit(visit, v);
}

inline nlohmann::ordered_json value_json(const ReportValue& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

}  // namespace detail

inline void render_text(std::ostream& os, const Report& r) {
  os << "# " << r.command << '\n';
  std::size_t w = 0;
  for (const auto& [k, v] : r.summary) w = std::max(w, k.size());
  for (const auto& [k, v] : r.summary) os << k << std::string(w - k.size() + 2, ' ') << detail::value_text(v) << '\n';
  if (!r.columns.empty()) {
    std::vector<std::size_t> width(r.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].size();
    for (const auto& row : r.rows) {
      auto& out = cells.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        out.push_back(detail::value_text(row[c]));
        width[c] = std::max(width[c], out.back().size());
      }
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        os << line[c];
        if (c + 1 < line.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
      }
      os << '\n';
    };
    os << '\n';
    emit(r.columns);
    for (const auto& line : cells) emit(line);
  }
  os << "\nresult: " << (r.passed ? "PASS" : "FAIL") << '\n';
}

inline void render_json(std::ostream& os, const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["passed"] = r.passed;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.summary) summary[k] = detail::value_json(v);
  j["summary"] = summary;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) o[r.columns[c]] = detail::value_json(row[c]);
    rows.push_back(o);
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

namespace detail {

inline void add_pr_summary(Report& r, const PRConfig& pr) {
  r.summary.emplace_back("alpha", pr.alpha);
  r.summary.emplace_back("eps", pr.eps);
  r.summary.emplace_back("trunc", static_cast<long long>(pr.trunc));
  r.summary.emplace_back("samples", static_cast<long long>(pr.samples));
}

}  // namespace detail

/// W[U^n] for n = 1..max_power against the target n.
inline Report cmd_winding(const RunConfig& cfg) {
  cfg.validate();
  Report r("winding");
  detail::add_pr_summary(r, cfg.pr);
  const TorusElement e = build_projection(cfg.pr);
  r.summary.emplace_back("projection_defect", projection_defect(e));
  const TorusElement u = build_unitary(e, cfg.tol("projection"));
  r.summary.emplace_back("tolerance", cfg.tol("winding"));
  r.columns = {"n", "winding_re", "winding_im", "abs_error", "defect_unitary"};
  TorusElement un = u;
  for (int n = 1; n <= cfg.max_power; ++n) {
    if (n > 1) un = mul(un, u);
    const Complex w = winding(un, cfg.tol("pr-unitary"));
    const double err = std::abs(w - static_cast<double>(n));
    r.rows.push_back({static_cast<long long>(n), w.real(), w.imag(), err, defect_unitary(un)});
    r.passed = r.passed && err <= cfg.tol("winding");
  }
  return r;
}

/// trace(e), l1(e^2 - e), chern2(e) of the Powers-Rieffel projection.
inline Report cmd_projection(const RunConfig& cfg) {
  cfg.validate();
  Report r("projection");
  detail::add_pr_summary(r, cfg.pr);
  const TorusElement e = build_projection(cfg.pr);
  const Complex tr = trace(e);
  const Complex c = chern2(e);
  const double tr_err = std::abs(tr - cfg.pr.alpha);
  const double c_err = std::abs(c - 1.0);
  r.summary.emplace_back("trace_re", tr.real());
  r.summary.emplace_back("trace_im", tr.imag());
  r.summary.emplace_back("trace_error", tr_err);
  r.summary.emplace_back("projection_defect", projection_defect(e));
  r.summary.emplace_back("chern2_re", c.real());
  r.summary.emplace_back("chern2_im", c.imag());
  r.summary.emplace_back("chern2_error", c_err);
  r.passed = tr_err <= cfg.tol("trace") && c_err <= cfg.tol("chern");
  return r;
}

/// Seeded random hermitian A (radius <= 2) and monomial unitaries u (radius
/// <= 2); the first case uses u = 1.
inline Report cmd_gauge_check(const RunConfig& cfg) {
  cfg.validate();
  Report r("gauge-check");
  r.summary.emplace_back("theta12", cfg.theta.theta12());
  r.summary.emplace_back("theta13", cfg.theta.theta13());
  r.summary.emplace_back("theta23", cfg.theta.theta23());
  r.summary.emplace_back("n", static_cast<long long>(cfg.n));
  r.summary.emplace_back("k", cfg.k.k);
  r.summary.emplace_back("seed", std::to_string(cfg.seed));
  r.summary.emplace_back("cases", static_cast<long long>(cfg.cases));
  Sampler s(cfg.seed);
  double worst = 0.0, worst_rel = 0.0;
  for (int i = 0; i < cfg.cases; ++i) {
    const GaugePotential a(s.hermitian(cfg.theta, cfg.n, 2), s.hermitian(cfg.theta, cfg.n, 2),
                           s.hermitian(cfg.theta, cfg.n, 2));
    const TorusElement u = i == 0 ? one(cfg.theta, cfg.n) : s.monomial_unitary(cfg.theta, cfg.n, 2);
    const GaugePotential au = gauge_transform(a, u, cfg.tol("unitary"));
    const double d = std::abs(cs_action(au, cfg.k) - cs_action(a, cfg.k) - gamma(u, cfg.k, cfg.tol("unitary")));
    worst = std::max(worst, d);
    worst_rel = std::max(worst_rel, d / gauge_defect_scale(a, au, cfg.k));
  }
  r.summary.emplace_back("max_defect", worst);
  r.summary.emplace_back("max_relative_defect", worst_rel);
  r.summary.emplace_back("tolerance", cfg.tol("gauge"));
  r.passed = worst_rel <= cfg.tol("gauge");
  return r;
}

/// Zeta residue from the heat trace on the default grid.
inline Report cmd_residue(const RunConfig& cfg) {
  cfg.validate();
  Report r("residue");
  const auto& grid = default_residue_grid();
  const ResidueFit fit = fit_residue(grid);
  const double rel = std::abs(fit.residue - kZetaResidue) / kZetaResidue;
  r.summary.emplace_back("residue", fit.residue);
  r.summary.emplace_back("reference", kZetaResidue);
  r.summary.emplace_back("relative_error", rel);
  r.summary.emplace_back("free_slope", fit.free_slope);
  r.summary.emplace_back("tolerance", cfg.tol("residue"));
  r.columns = {"t", "heat_trace", "normalized"};
  for (double t : grid) {
    const double h = heat_trace(t);
    r.rows.push_back({t, h, h * std::pow(4.0 * std::numbers::pi * t, 1.5)});
  }
  r.passed = rel <= cfg.tol("residue");
  return r;
}

/// (t, heat_trace(t)) as CSV, t log-spaced over [t_min, t_max].
inline void write_heat_csv(std::ostream& os, double t_min = 1e-4, double t_max = 1e-1, int points = 31) {
  if (!(t_min > 0.0 && t_max > t_min) || points < 2) throw ArgumentError("invalid CSV grid");
  os << "t,heat_trace\n";
  for (int i = 0; i < points; ++i) {
    const double t = t_min * std::pow(t_max / t_min, static_cast<double>(i) / (points - 1));
    os << format_double(t) << ',' << format_double(heat_trace(t)) << '\n';
  }
}

/// All invariant suites with cfg.seed.
inline Report cmd_selftest(const RunConfig& cfg) {
  cfg.validate();
  Report r("selftest");
  r.summary.emplace_back("seed", std::to_string(cfg.seed));
  SuiteOptions opt;
  opt.seed = cfg.seed;
  r.columns = {"suite", "worst", "tolerance", "cases", "passed"};
  for (const SuiteResult& s : run_all_suites(opt)) {
    r.rows.push_back({s.name, s.worst, s.tolerance, static_cast<long long>(s.cases), s.passed});
    r.passed = r.passed && s.passed;
  }
  return r;
}

/// Builds a named element: "projection", "unitary", "u1", "u2", "u3" or "random".
inline TorusElement make_element(const RunConfig& cfg, const std::string& what) {
  cfg.validate();
  if (what == "projection") return build_projection(cfg.pr);
  if (what == "unitary") return build_unitary(build_projection(cfg.pr), cfg.tol("projection"));
  if (what == "u1" || what == "u2" || what == "u3") return generator(cfg.theta, cfg.n, what[1] - '0');
  if (what == "random") return Sampler(cfg.seed).element(cfg.theta, cfg.n, 3);
  throw ConfigError("unknown element '" + what + "' (projection, unitary, u1, u2, u3, random)");
}

/// Describes an element read back from a file.
inline Report describe_element(const TorusElement& a) {
  Report r("import");
  r.summary.emplace_back("n", static_cast<long long>(a.dim()));
  r.summary.emplace_back("theta12", a.theta().theta12());
  r.summary.emplace_back("theta13", a.theta().theta13());
  r.summary.emplace_back("theta23", a.theta().theta23());
  r.summary.emplace_back("modes", static_cast<long long>(a.size()));
  r.summary.emplace_back("radius", static_cast<long long>(a.radius()));
  const Norms nm = norms(a);
  r.summary.emplace_back("l1", nm.l1);
  r.summary.emplace_back("linf", nm.linf);
  const Complex tr = trace(a);
  r.summary.emplace_back("trace_re", tr.real());
  r.summary.emplace_back("trace_im", tr.imag());
  r.summary.emplace_back("hermitian_defect", l1(a - adjoint(a)));
  return r;
}

}  // namespace nctorus
