#pragma once

// Text formats.
//
// Element file:
//   nctorus v1 N=<n> theta=<theta12> <theta13> <theta23>
//   p1 p2 p3 row col re im        (one line per nonzero matrix entry)
// Doubles use shortest round-trip formatting, so write -> read is exact.
//
// Gauge potential manifest: whitespace-separated A1=<path> A2=<path>
// A3=<path> k=<real>; relative paths resolve against the manifest directory.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include "nctorus/core/algebra.hpp"
#include "nctorus/gauge.hpp"

namespace nctorus {

/// Shortest decimal string that reads back to exactly `x`.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline double parse_double(std::string_view s, std::size_t line, const char* what) {
  double v = 0.0;
  if (!parse_number(s, v) || !std::isfinite(v)) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
  }
  return v;
}

inline int parse_int(std::string_view s, std::size_t line, const char* what) {
  int v = 0;
  if (!parse_number(s, v)) throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'", line);
  return v;
}

}  // namespace detail

inline void write_element(std::ostream& os, const TorusElement& a) {
  const auto& th = a.theta();
  os << "nctorus v1 N=" << a.dim() << " theta=" << format_double(th.theta12()) << ' '
     << format_double(th.theta13()) << ' ' << format_double(th.theta23()) << '\n';
  const int n = a.dim();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const MultiIndex& p = a.mode(k);
    auto blk = a.block(k);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const Complex z = blk[static_cast<std::size_t>(r) * n + c];
        if (z == Complex{}) continue;
        os << p[0] << ' ' << p[1] << ' ' << p[2] << ' ' << r << ' ' << c << ' ' << format_double(z.real())
           << ' ' << format_double(z.imag()) << '\n';
      }
  }
}

/// Throws ParseError (with the 1-based line) on a malformed header or record,
/// an entry outside the n x n block, a repeated entry, or a stored zero.
inline TorusElement read_element(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw ParseError("empty element file", 0);
  ++lineno;
  const auto head = detail::split_ws(line);
  if (head.size() != 6 || head[0] != "nctorus" || head[1] != "v1" || head[2].substr(0, 2) != "N=" ||
      head[3].substr(0, 6) != "theta=") {
    throw ParseError("expected header 'nctorus v1 N=<n> theta=<t12> <t13> <t23>'", lineno);
  }
  const int n = detail::parse_int(head[2].substr(2), lineno, "matrix size");
  if (n < 1) throw ParseError("matrix size must be positive", lineno);
  const DeformationMatrix theta(detail::parse_double(head[3].substr(6), lineno, "theta12"),
                                detail::parse_double(head[4], lineno, "theta13"),
                                detail::parse_double(head[5], lineno, "theta23"));

  ElementBuilder builder(theta, n);
  std::set<std::tuple<MultiIndex, int, int>> seen;
  while (std::getline(is, line)) {
    ++lineno;
    const auto f = detail::split_ws(line);
    if (f.empty()) continue;
    if (f.size() != 7) throw ParseError("expected 'p1 p2 p3 row col re im'", lineno);
    const MultiIndex p(detail::parse_int(f[0], lineno, "p1"), detail::parse_int(f[1], lineno, "p2"),
                       detail::parse_int(f[2], lineno, "p3"));
    const int r = detail::parse_int(f[3], lineno, "row");
    const int c = detail::parse_int(f[4], lineno, "col");
    if (r < 0 || r >= n || c < 0 || c >= n) throw ParseError("matrix entry outside the N x N block", lineno);
    const Complex z(detail::parse_double(f[5], lineno, "real part"),
                    detail::parse_double(f[6], lineno, "imaginary part"));
    if (z == Complex{}) throw ParseError("zero coefficient stored", lineno);
    if (!seen.emplace(p, r, c).second) throw ParseError("repeated matrix entry", lineno);
    builder.add(p, r, c, z);
  }
  return builder.build(0.0);
}

inline void save_element(const std::filesystem::path& path, const TorusElement& a) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_element(os, a);
  if (!os) throw Error("write to '" + path.string() + "' failed");
}

inline TorusElement load_element(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  try {
    return read_element(is);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

struct PotentialFiles {
  GaugePotential potential;
  Coupling k;
};

/// Writes <stem>_A1.txt .. <stem>_A3.txt next to `manifest` and the manifest itself.
inline void save_potential(const std::filesystem::path& manifest, const GaugePotential& a, Coupling k) {
  const auto dir = manifest.parent_path();
  const std::string stem = manifest.stem().string();
  std::ostringstream m;
  for (int mu = 1; mu <= 3; ++mu) {
    const std::string name = stem + "_A" + std::to_string(mu) + ".txt";
    save_element(dir / name, a[mu]);
    m << 'A' << mu << '=' << name << ' ';
  }
  m << "k=" << format_double(k.k) << '\n';
  std::ofstream os(manifest);
  if (!os) throw Error("cannot open '" + manifest.string() + "' for writing");
  os << m.str();
}

inline PotentialFiles load_potential(const std::filesystem::path& manifest) {
  std::ifstream is(manifest);
  if (!is) throw Error("cannot open '" + manifest.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    for (auto tok : detail::split_ws(line)) {
      const auto eq = tok.find('=');
      if (eq == std::string_view::npos || eq == 0) throw ParseError("expected key=value", lineno);
      const std::string key(tok.substr(0, eq));
      if (key != "A1" && key != "A2" && key != "A3" && key != "k") {
        throw ParseError("unknown manifest key '" + key + "'", lineno);
      }
      if (!kv.emplace(key, std::string(tok.substr(eq + 1))).second) {
        throw ParseError("repeated manifest key '" + key + "'", lineno);
      }
    }
  }
  for (const char* key : {"A1", "A2", "A3", "k"}) {
    if (!kv.count(key)) throw ParseError(std::string("manifest is missing ") + key, 0);
  }
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : manifest.parent_path() / q;
  };
  GaugePotential a(load_element(resolve(kv["A1"])), load_element(resolve(kv["A2"])),
                   load_element(resolve(kv["A3"])));
  return {std::move(a), Coupling(detail::parse_double(kv["k"], 0, "coupling"))};
}

}  // namespace nctorus
