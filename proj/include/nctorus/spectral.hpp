#pragma once

// Heat trace of the flat 3-torus Laplacian with eigenvalues 4 pi^2 |k|^2
// (the square of the derivation eigenvalue 2 i pi k), the zero mode removed,
// and the residue at z = 3/2 of its zeta function read off the t^{-3/2}
// coefficient: res = a / Gamma(3/2) when heat_trace(t) ~ a t^{-3/2}.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "nctorus/errors.hpp"

namespace nctorus {

/// 1 / (4 pi^2).
inline constexpr double kZetaResidue = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

/// Default fitting grid: one decade deep inside the small-t regime, where the
/// zero-mode offset and the e^{-1/4t} image terms stay below 0.15%.
inline const std::vector<double>& default_residue_grid() {
  static const std::vector<double> grid{1e-3, 5e-4, 2e-4, 1e-4};
  return grid;
}

/// Smallest R >= 1 whose dropped shells |k| > R weigh less than 1e-16 of the
/// first shell: exp(-c ((R+1)^2 - 1)) < e^{-37}, c = 4 pi^2 s t.
inline int heat_cutoff(double t, double eigen_scale = 1.0) {
  if (!(t > 0.0)) throw ArgumentError("heat trace time must be positive");
  const double c = 4.0 * std::numbers::pi * std::numbers::pi * eigen_scale * t;
  int r = 1;
  while (c * ((r + 1.0) * (r + 1.0) - 1.0) < 37.0) ++r;
  return r;
}

/// sum_{k in Z^3, k != 0} exp(-4 pi^2 s t |k|^2), with s = eigen_scale, summing
/// |k_i| <= cutoff. The 3D lattice sum factorizes into the 1D shell sum
/// q = 2 sum_{j=1..R} e^{-c j^2}; theta^3 - 1 = q (3 + 3 q + q^2) avoids cancellation.
inline double heat_trace(double t, int cutoff, double eigen_scale = 1.0) {
  if (!(t > 0.0)) throw ArgumentError("heat trace time must be positive");
  if (cutoff < 0) throw ArgumentError("heat trace cutoff must be non-negative");
  const double c = 4.0 * std::numbers::pi * std::numbers::pi * eigen_scale * t;
  double q = 0.0;
  for (int j = cutoff; j >= 1; --j) q += std::exp(-c * static_cast<double>(j) * j);
  q *= 2.0;
  return q * (3.0 + 3.0 * q + q * q);
}

inline double heat_trace(double t) { return heat_trace(t, heat_cutoff(t)); }

struct ResidueFit {
  /// a / Gamma(3/2) from the slope-fixed fit.
  double residue = 0.0;
  /// Slope of the free two-parameter log-log fit.
  double free_slope = 0.0;
};

/// Least squares of log heat_trace(t) against log t over the grid: with the
/// slope pinned at -3/2 for the residue, and with a free slope as a check.
inline ResidueFit fit_residue(std::span<const double> t_grid, double eigen_scale = 1.0) {
  if (t_grid.size() < 2) throw ArgumentError("residue grid needs at least two points");
  double tmin = t_grid[0], tmax = t_grid[0];
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= 0.1)) throw ArgumentError("residue grid points must lie in (0, 0.1]");
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  if (tmax < 10.0 * tmin * (1.0 - 1e-12)) throw ArgumentError("residue grid must span at least a decade");

  std::vector<double> x, y;
  for (double t : t_grid) {
    x.push_back(std::log(t));
    y.push_back(std::log(heat_trace(t, heat_cutoff(t, eigen_scale), eigen_scale)));
  }
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, fixed = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    fixed += y[i] + 1.5 * x[i];
  }
  ResidueFit r;
  const double log_a = fixed / m;
  r.residue = std::exp(log_a) / std::tgamma(1.5);
  r.free_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return r;
}

inline double residue_estimate(std::span<const double> t_grid, double eigen_scale = 1.0) {
  return fit_residue(t_grid, eigen_scale).residue;
}

inline double residue_estimate() { return residue_estimate(default_residue_grid()); }

namespace detail {

using Pauli = std::array<std::complex<double>, 4>;  // row-major 2x2

inline const Pauli& pauli(int l) {
  using C = std::complex<double>;
  static const std::array<Pauli, 3> sigma{{
      {C{0, 0}, C{1, 0}, C{1, 0}, C{0, 0}},
      {C{0, 0}, C{0, -1}, C{0, 1}, C{0, 0}},
      {C{1, 0}, C{0, 0}, C{0, 0}, C{-1, 0}},
  }};
  if (l < 1 || l > 3) throw ArgumentError("Pauli index must be 1, 2 or 3, got " + std::to_string(l));
  return sigma[static_cast<std::size_t>(l - 1)];
}

inline Pauli pauli_mul(const Pauli& x, const Pauli& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

}  // namespace detail

/// tr(sigma_l), axis 1..3. Zero for every axis, which is why the one-form
/// part of the index pairing drops out.
inline std::complex<double> pauli_trace1(int l) {
  const auto& s = detail::pauli(l);
  return s[0] + s[3];
}

/// tr(sigma_l sigma_m sigma_n) from explicit Pauli matrices, axes 1..3.
inline std::complex<double> pauli_trace3(int l, int m, int n) {
  const auto p = detail::pauli_mul(detail::pauli_mul(detail::pauli(l), detail::pauli(m)), detail::pauli(n));
  return p[0] + p[3];
}

}  // namespace nctorus
