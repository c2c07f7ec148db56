#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <ostream>

#include "nctorus/errors.hpp"

namespace nctorus {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Fourier mode (p1, p2, p3) of the monomial U1^p1 U2^p2 U3^p3.
/// Ordered lexicographically; that order is the storage order of elements.
struct MultiIndex {
  std::array<int, 3> p{0, 0, 0};

  constexpr MultiIndex() = default;
  constexpr MultiIndex(int p1, int p2, int p3) : p{p1, p2, p3} {}

  constexpr int operator[](std::size_t i) const { return p[i]; }
  constexpr int& operator[](std::size_t i) { return p[i]; }

  constexpr MultiIndex operator+(const MultiIndex& o) const {
    return {p[0] + o.p[0], p[1] + o.p[1], p[2] + o.p[2]};
  }
  constexpr MultiIndex operator-() const { return {-p[0], -p[1], -p[2]}; }
  constexpr bool is_zero() const { return p[0] == 0 && p[1] == 0 && p[2] == 0; }
  constexpr int radius() const {
    int r = 0;
    for (int v : p) r = std::max(r, v < 0 ? -v : v);
    return r;
  }

  constexpr auto operator<=>(const MultiIndex&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const MultiIndex& m) {
  return os << '(' << m[0] << ',' << m[1] << ',' << m[2] << ')';
}

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int v : m.p) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// exp(2 i pi x), with x reduced mod 1 in extended precision first so large
/// integer multiples of theta keep their fractional part.
inline Complex unit_phase(long double turns) {
  long double frac = turns - std::floor(turns);
  double angle = static_cast<double>(frac) * kTwoPi;
  return {std::cos(angle), std::sin(angle)};
}

/// Real antisymmetric 3x3 deformation matrix, U_i U_j = e^{2 i pi theta_ij} U_j U_i.
/// Only the upper triangle (theta12, theta13, theta23) is stored.
class DeformationMatrix {
 public:
  constexpr DeformationMatrix() = default;
  constexpr DeformationMatrix(double t12, double t13, double t23) : upper_{t12, t13, t23} {}

  /// From a full matrix; throws ArgumentError unless exactly antisymmetric.
  static DeformationMatrix from_matrix(const std::array<std::array<double, 3>, 3>& m) {
    for (int i = 0; i < 3; ++i) {
      if (m[i][i] != 0.0) throw ArgumentError("deformation matrix must have zero diagonal");
      for (int j = 0; j < 3; ++j) {
        if (m[i][j] != -m[j][i]) throw ArgumentError("deformation matrix must be antisymmetric");
      }
    }
    return {m[0][1], m[0][2], m[1][2]};
  }

  static constexpr DeformationMatrix commutative() { return {}; }

  double theta12() const { return upper_[0]; }
  double theta13() const { return upper_[1]; }
  double theta23() const { return upper_[2]; }

  /// theta_ij with 0-based axes.
  constexpr double operator()(int i, int j) const {
    if (i == j) return 0.0;
    const bool flip = i > j;
    const int a = flip ? j : i;
    const int b = flip ? i : j;
    const double v = (a == 0) ? (b == 1 ? upper_[0] : upper_[1]) : upper_[2];
    return flip ? -v : v;
  }

  /// Phase angle in turns of the product U^p U^q = phase * U^{p+q}:
  /// sum_{i>j} theta_ij p_i q_j.
  long double product_turns(const MultiIndex& p, const MultiIndex& q) const {
    long double t = 0.0L;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j)
        t += static_cast<long double>((*this)(i, j)) * p[i] * q[j];
    return t;
  }

  Complex product_phase(const MultiIndex& p, const MultiIndex& q) const {
    return unit_phase(product_turns(p, q));
  }

  /// (U^p)^* = star_phase(p) * U^{-p}.
  Complex star_phase(const MultiIndex& p) const { return product_phase(p, p); }

  bool operator==(const DeformationMatrix&) const = default;

 private:
  std::array<double, 3> upper_{0.0, 0.0, 0.0};
};

inline std::ostream& operator<<(std::ostream& os, const DeformationMatrix& t) {
  return os << "theta(" << t.theta12() << ", " << t.theta13() << ", " << t.theta23() << ')';
}

}  // namespace nctorus
