#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/core/element.hpp"
#include "nctorus/core/kernel.hpp"

namespace nctorus {

inline constexpr double kDefaultUnitaryTol = 1e-10;
inline constexpr double kDefaultHermitianTol = 1e-12;

/// Unit of M_n(A_theta): I_n at mode (0,0,0).
inline TorusElement one(DeformationMatrix theta, int n) { return TorusElement::identity(theta, n); }

/// Generator U_axis (axis in 1..3) as an element of M_n(A_theta).
inline TorusElement generator(DeformationMatrix theta, int n, int axis) {
  if (axis < 1 || axis > 3) throw ArgumentError("axis must be 1, 2 or 3, got " + std::to_string(axis));
  MultiIndex p;
  p[static_cast<std::size_t>(axis - 1)] = 1;
  return TorusElement::monomial(theta, n, p);
}

namespace detail {

// Merges sorted supports: za * a + zb * b.
inline TorusElement combine(const TorusElement& a, Complex za, const TorusElement& b, Complex zb) {
  const std::size_t bs = a.block_size();
  std::vector<MultiIndex> modes;
  std::vector<Complex> data;
  modes.reserve(a.size() + b.size());
  data.reserve((a.size() + b.size()) * bs);
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const bool take_a = j == b.size() || (i < a.size() && a.mode(i) <= b.mode(j));
    const bool take_b = i == a.size() || (j < b.size() && b.mode(j) <= a.mode(i));
    const MultiIndex p = take_a ? a.mode(i) : b.mode(j);
    modes.push_back(p);
    const std::size_t base = data.size();
    data.resize(base + bs);
    if (take_a) {
      auto blk = a.block(i++);
      for (std::size_t t = 0; t < bs; ++t) data[base + t] += za * blk[t];
    }
    if (take_b) {
      auto blk = b.block(j++);
      for (std::size_t t = 0; t < bs; ++t) data[base + t] += zb * blk[t];
    }
  }
  const double scale = std::max(std::abs(za) * max_block_norm(a), std::abs(zb) * max_block_norm(b));
  return TorusElement::assemble(a.theta(), a.dim(), std::move(modes), std::move(data), scale);
}

inline double operator_norm(std::span<const Complex> block, int n) {
  if (n == 1) return std::abs(block[0]);
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(block.data(), n, n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace detail

inline TorusElement add(const TorusElement& a, const TorusElement& b) {
  require_compatible(a, b, "add");
  return detail::combine(a, 1.0, b, 1.0);
}

inline TorusElement sub(const TorusElement& a, const TorusElement& b) {
  require_compatible(a, b, "sub");
  return detail::combine(a, 1.0, b, -1.0);
}

inline TorusElement scale(Complex z, const TorusElement& a) {
  if (z == Complex{}) return TorusElement(a.theta(), a.dim());
  std::vector<MultiIndex> modes(a.modes().begin(), a.modes().end());
  std::vector<Complex> data(a.data().begin(), a.data().end());
  for (auto& c : data) c *= z;
  return TorusElement::assemble(a.theta(), a.dim(), std::move(modes), std::move(data),
                                std::abs(z) * detail::max_block_norm(a));
}

inline TorusElement operator+(const TorusElement& a, const TorusElement& b) { return add(a, b); }
inline TorusElement operator-(const TorusElement& a, const TorusElement& b) { return sub(a, b); }
inline TorusElement operator-(const TorusElement& a) { return scale(-1.0, a); }
inline TorusElement operator*(const TorusElement& a, const TorusElement& b) { return mul(a, b); }
inline TorusElement operator*(Complex z, const TorusElement& a) { return scale(z, a); }
inline TorusElement operator*(double x, const TorusElement& a) { return scale(x, a); }

/// Star involution: (a*)_p = star_phase(p) * (a_{-p})^H, where
/// (U^p)* = U3^-p3 U2^-p2 U1^-p1 = star_phase(p) U^{-p}.
inline TorusElement adjoint(const TorusElement& a) {
  const int n = a.dim();
  const std::size_t bs = a.block_size();
  std::vector<MultiIndex> modes;
  std::vector<Complex> data(a.size() * bs);
  modes.reserve(a.size());
  for (std::size_t k = a.size(); k-- > 0;) {
    const MultiIndex& p = a.mode(k);
    const Complex w = a.theta().star_phase(p);
    const std::size_t base = modes.size() * bs;
    auto blk = a.block(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        data[base + static_cast<std::size_t>(i) * n + j] = w * std::conj(blk[static_cast<std::size_t>(j) * n + i]);
    modes.push_back(-p);
  }
  return TorusElement::assemble(a.theta(), n, std::move(modes), std::move(data), detail::max_block_norm(a));
}

/// Derivation d_axis (axis in 1..3): multiplies mode p by 2 i pi p_axis.
inline TorusElement derive(int axis, const TorusElement& a) {
  if (axis < 1 || axis > 3) throw ArgumentError("axis must be 1, 2 or 3, got " + std::to_string(axis));
  const std::size_t ax = static_cast<std::size_t>(axis - 1);
  std::vector<MultiIndex> modes;
  std::vector<Complex> data;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int pk = a.mode(k)[ax];
    if (pk == 0) continue;
    const Complex factor{0.0, kTwoPi * pk};
    modes.push_back(a.mode(k));
    for (const Complex& c : a.block(k)) data.push_back(factor * c);
  }
  return TorusElement::assemble(a.theta(), a.dim(), std::move(modes), std::move(data), 0.0);
}

/// Canonical trace composed with the matrix trace: tr(a_{(0,0,0)}), so trace(one) = n.
inline Complex trace(const TorusElement& a) {
  const std::size_t k = a.find({0, 0, 0});
  if (k == a.size()) return {};
  Complex t{};
  const int n = a.dim();
  auto blk = a.block(k);
  for (int i = 0; i < n; ++i) t += blk[static_cast<std::size_t>(i) * n + i];
  return t;
}

/// trace(a * b) without forming the product:
/// sum_p phase(p, -p) tr(a_p b_{-p}).
inline Complex trace_product(const TorusElement& a, const TorusElement& b) {
  require_compatible(a, b, "trace_product");
  const int n = a.dim();
  Complex t{};
  for (std::size_t k = 0; k < a.size(); ++k) {
    const MultiIndex& p = a.mode(k);
    const std::size_t kb = b.find(-p);
    if (kb == b.size()) continue;
    auto x = a.block(k);
    auto y = b.block(kb);
    Complex s{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += detail::cmul(x[static_cast<std::size_t>(i) * n + j], y[static_cast<std::size_t>(j) * n + i]);
    t += detail::cmul(a.theta().product_phase(p, -p), s);
  }
  return t;
}

/// Drops modes with |p_i| > radius on any axis.
inline TorusElement truncate(const TorusElement& a, int radius) {
  std::vector<MultiIndex> modes;
  std::vector<Complex> data;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.mode(k).radius() > radius) continue;
    modes.push_back(a.mode(k));
    auto blk = a.block(k);
    data.insert(data.end(), blk.begin(), blk.end());
  }
  return TorusElement::assemble(a.theta(), a.dim(), std::move(modes), std::move(data), 0.0);
}

struct Norms {
  /// Sum of coefficient operator norms; an upper bound on the C*-norm.
  double l1 = 0.0;
  /// Largest coefficient operator norm.
  double linf = 0.0;
};

inline Norms norms(const TorusElement& a) {
  Norms r;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double v = detail::operator_norm(a.block(k), a.dim());
    r.l1 += v;
    r.linf = std::max(r.linf, v);
  }
  return r;
}

inline double l1(const TorusElement& a) { return norms(a).l1; }

inline bool is_hermitian(const TorusElement& a, double tol) { return l1(a - adjoint(a)) <= tol; }

/// max(l1(a a* - 1), l1(a* a - 1)).
inline double defect_unitary(const TorusElement& a) {
  const TorusElement e = one(a.theta(), a.dim());
  const TorusElement as = adjoint(a);
  return std::max(l1(mul(a, as) - e), l1(mul(as, a) - e));
}

inline bool is_unitary(const TorusElement& a, double tol) { return defect_unitary(a) <= tol; }

}  // namespace nctorus
