#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nctorus/core/algebra.hpp"

namespace nctorus {

/// Coupling constant k of the Chern-Simons action.
struct Coupling {
  double k = 1.0;

  explicit Coupling(double value = 1.0) : k(value) {
    if (!std::isfinite(value)) throw ArgumentError("coupling constant must be finite");
  }
};

/// One term of the Levi-Civita contraction, axes 1-based.
struct EpsilonTerm {
  int lambda, mu, nu;
  double sign;
};

/// The six nonzero epsilon_{lambda mu nu} in lexicographic order, eps_123 = +1.
/// Every contraction sums in this order.
inline constexpr std::array<EpsilonTerm, 6> kEpsilonTerms{{
    {1, 2, 3, +1.0},
    {1, 3, 2, -1.0},
    {2, 1, 3, -1.0},
    {2, 3, 1, +1.0},
    {3, 1, 2, +1.0},
    {3, 2, 1, -1.0},
}};

/// Triple (A1, A2, A3) of hermitian elements of M_n(A_theta).
class GaugePotential {
 public:
  /// Hermiticity is checked as l1(A - A*) <= tol * max(1, l1(A)) per component.
  GaugePotential(TorusElement a1, TorusElement a2, TorusElement a3, double tol = kDefaultHermitianTol)
      : comps_{std::move(a1), std::move(a2), std::move(a3)} {
    require_compatible(comps_[0], comps_[1], "GaugePotential");
    require_compatible(comps_[0], comps_[2], "GaugePotential");
    for (int mu = 0; mu < 3; ++mu) {
      const TorusElement& a = comps_[static_cast<std::size_t>(mu)];
      const double defect = l1(a - adjoint(a));
      if (defect > tol * std::max(1.0, l1(a))) {
        throw PreconditionError("gauge potential component A" + std::to_string(mu + 1) +
                                    " is not hermitian (l1(A - A*) = " + std::to_string(defect) + ")",
                                defect);
      }
    }
  }

  /// Skips the hermiticity check. Gauge transforms land here: u d(u*) is
  /// anti-hermitian, so A^u is hermitian only when that term vanishes.
  static GaugePotential general(TorusElement a1, TorusElement a2, TorusElement a3) {
    return GaugePotential(std::move(a1), std::move(a2), std::move(a3), Unchecked{});
  }

  static GaugePotential zero(DeformationMatrix theta, int n) {
    TorusElement z(theta, n);
    return GaugePotential(z, z, z);
  }

  /// Component A_mu, mu in 1..3.
  const TorusElement& operator[](int mu) const {
    if (mu < 1 || mu > 3) throw ArgumentError("component index must be 1, 2 or 3");
    return comps_[static_cast<std::size_t>(mu - 1)];
  }

  const DeformationMatrix& theta() const { return comps_[0].theta(); }
  int dim() const { return comps_[0].dim(); }

  bool is_hermitian(double tol = kDefaultHermitianTol) const {
    for (const auto& c : comps_)
      if (l1(c - adjoint(c)) > tol * std::max(1.0, l1(c))) return false;
    return true;
  }

  /// max_mu l1(A_mu).
  double scale() const {
    double s = 0.0;
    for (const auto& c : comps_) s = std::max(s, l1(c));
    return s;
  }

 private:
  struct Unchecked {};
  GaugePotential(TorusElement a1, TorusElement a2, TorusElement a3, Unchecked)
      : comps_{std::move(a1), std::move(a2), std::move(a3)} {
    require_compatible(comps_[0], comps_[1], "GaugePotential");
    require_compatible(comps_[0], comps_[2], "GaugePotential");
  }

  std::array<TorusElement, 3> comps_;
};

namespace detail {

inline void require_unitary(const TorusElement& u, double tol, const char* op) {
  const double defect = defect_unitary(u);
  if (!(defect <= tol)) {
    throw PreconditionError(std::string(op) + ": unitarity defect " + std::to_string(defect) +
                                " exceeds tolerance " + std::to_string(tol),
                            defect);
  }
}

}  // namespace detail

/// S_CS[A] = (k / 4 pi) sum eps tr(A_l d_m A_n + (2/3) A_l A_m A_n).
/// Returned as a complex number; no reality is assumed.
inline Complex cs_action(const GaugePotential& a, Coupling k) {
  std::array<std::array<TorusElement, 3>, 3> prod;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      if (m != n) prod[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n - 1)] = mul(a[m], a[n]);

  Complex sum{};
  for (const auto& t : kEpsilonTerms) {
    const Complex quad = trace_product(a[t.lambda], derive(t.mu, a[t.nu]));
    const Complex cubic =
        trace_product(a[t.lambda], prod[static_cast<std::size_t>(t.mu - 1)][static_cast<std::size_t>(t.nu - 1)]);
    sum += t.sign * (quad + (2.0 / 3.0) * cubic);
  }
  return k.k / (4.0 * std::numbers::pi) * sum;
}

/// Curvature F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu]; indexed [mu-1][nu-1].
inline std::array<std::array<TorusElement, 3>, 3> curvature(const GaugePotential& a) {
  std::array<std::array<TorusElement, 3>, 3> f;
  for (auto& row : f) row.fill(TorusElement(a.theta(), a.dim()));
  for (int m = 1; m <= 3; ++m) {
    for (int n = m + 1; n <= 3; ++n) {
      TorusElement fmn = derive(m, a[n]) - derive(n, a[m]) + (mul(a[m], a[n]) - mul(a[n], a[m]));
      f[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(m - 1)] = -fmn;
      f[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n - 1)] = std::move(fmn);
    }
  }
  return f;
}

/// A_mu -> u A_mu u* + u d_mu(u*). u* stands in for u^{-1}; throws
/// PreconditionError when defect_unitary(u) > tol_u. The result is not
/// hermiticity-checked (see GaugePotential::general).
inline GaugePotential gauge_transform(const GaugePotential& a, const TorusElement& u,
                                      double tol_u = kDefaultUnitaryTol) {
  require_compatible(a[1], u, "gauge_transform");
  detail::require_unitary(u, tol_u, "gauge_transform");
  const TorusElement us = adjoint(u);
  std::array<TorusElement, 3> out;
  for (int m = 1; m <= 3; ++m) {
    out[static_cast<std::size_t>(m - 1)] = mul(mul(u, a[m]), us) + mul(u, derive(m, us));
  }
  return GaugePotential::general(std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

/// W[u] = (1 / 24 pi^2) sum eps tr(u d_l(u*) d_m u d_n(u*)).
inline Complex winding(const TorusElement& u, double tol_u = kDefaultUnitaryTol) {
  detail::require_unitary(u, tol_u, "winding");
  const TorusElement us = adjoint(u);
  std::array<TorusElement, 3> du, dus, left;
  for (int i = 0; i < 3; ++i) {
    du[static_cast<std::size_t>(i)] = derive(i + 1, u);
    dus[static_cast<std::size_t>(i)] = derive(i + 1, us);
    left[static_cast<std::size_t>(i)] = mul(u, dus[static_cast<std::size_t>(i)]);
  }
  Complex sum{};
  for (const auto& t : kEpsilonTerms) {
    const TorusElement right = mul(du[static_cast<std::size_t>(t.mu - 1)], dus[static_cast<std::size_t>(t.nu - 1)]);
    sum += t.sign * trace_product(left[static_cast<std::size_t>(t.lambda - 1)], right);
  }
  return sum / (24.0 * std::numbers::pi * std::numbers::pi);
}

/// Shift of the Chern-Simons action under u:
/// Gamma[u] = (k / 12 pi) sum eps tr(u d_l(u*) d_m u d_n(u*)) = 2 pi k W[u].
/// This is S_CS of the pure gauge u d(u*). The form tr(d u d(u*) d u) has net
/// degree one in u and misses the shift (it is zero on the Powers-Rieffel U).
inline Complex gamma(const TorusElement& u, Coupling k, double tol_u = kDefaultUnitaryTol) {
  return 2.0 * std::numbers::pi * k.k * winding(u, tol_u);
}

/// |S_CS[A^u] - S_CS[A] - Gamma[u]|.
inline double gauge_variation_defect(const GaugePotential& a, const TorusElement& u, Coupling k,
                                     double tol_u = kDefaultUnitaryTol) {
  const GaugePotential au = gauge_transform(a, u, tol_u);
  return std::abs(cs_action(au, k) - cs_action(a, k) - gamma(u, k, tol_u));
}

/// Scale for the gauge defect, the size of the terms in S_CS[A^u] - S_CS[A] - Gamma[u]:
/// max(1, |k|) max(1, l1 scale)^3.
inline double gauge_defect_scale(const GaugePotential& a, const GaugePotential& au, Coupling k) {
  const double s = std::max({1.0, a.scale(), au.scale()});
  return std::max(1.0, std::abs(k.k)) * s * s * s;
}

/// (1 / 2 i pi) tr(e (d1 e d2 e - d2 e d1 e)).
inline Complex chern2(const TorusElement& e) {
  const TorusElement d1 = derive(1, e);
  const TorusElement d2 = derive(2, e);
  const Complex t = trace_product(e, mul(d1, d2)) - trace_product(e, mul(d2, d1));
  return t / Complex(0.0, kTwoPi);
}

}  // namespace nctorus
