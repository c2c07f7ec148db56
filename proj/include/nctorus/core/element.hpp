#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/core/deformation.hpp"
#include "nctorus/errors.hpp"

namespace nctorus {

/// Coefficients whose Frobenius norm falls below this fraction of the
/// operation's scale are dropped from the sparse support.
inline constexpr double kPruneRelative = 1e-15;

namespace detail {

inline double frobenius(std::span<const Complex> block) {
  double s = 0.0;
  for (const Complex& z : block) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace detail

/// Element of M_n(A_theta): a finitely supported map Z^3 -> n x n complex
/// matrices, stored as a lexicographically sorted list of modes with one
/// row-major n*n block per mode. No stored block is zero.
class TorusElement {
 public:
  TorusElement() : TorusElement(DeformationMatrix{}, 1) {}

  TorusElement(DeformationMatrix theta, int n) : theta_(theta), n_(n) {
    if (n < 1) throw ArgumentError("matrix size must be positive, got " + std::to_string(n));
  }

  static TorusElement identity(DeformationMatrix theta, int n) {
    return monomial(theta, n, {0, 0, 0});
  }

  /// z * I_n * U1^p1 U2^p2 U3^p3.
  static TorusElement monomial(DeformationMatrix theta, int n, MultiIndex p, Complex z = 1.0) {
    TorusElement e(theta, n);
    if (z == Complex{}) return e;
    e.modes_.push_back(p);
    e.data_.assign(static_cast<std::size_t>(n) * n, Complex{});
    for (int i = 0; i < n; ++i) e.data_[static_cast<std::size_t>(i) * n + i] = z;
    return e;
  }

  /// Adopts strictly increasing `modes` with matching row-major blocks, then
  /// prunes blocks with norm <= kPruneRelative * scale. A negative scale means
  /// "largest block norm of the input".
  static TorusElement assemble(DeformationMatrix theta, int n, std::vector<MultiIndex> modes,
                               std::vector<Complex> data, double scale = -1.0) {
    TorusElement e(theta, n);
    const std::size_t bs = e.block_size();
    if (data.size() != modes.size() * bs) {
      throw ArgumentError("coefficient buffer does not match mode count");
    }
    for (std::size_t k = 1; k < modes.size(); ++k) {
      if (!(modes[k - 1] < modes[k])) throw ArgumentError("modes must be strictly increasing");
    }
    if (scale < 0.0) {
      scale = 0.0;
      for (std::size_t k = 0; k < modes.size(); ++k) {
        scale = std::max(scale, detail::frobenius({data.data() + k * bs, bs}));
      }
    }
    const double cut = kPruneRelative * scale;
    std::size_t out = 0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      std::span<const Complex> block{data.data() + k * bs, bs};
      const double nrm = detail::frobenius(block);
      if (nrm == 0.0 || nrm <= cut) continue;
      if (out != k) {
        modes[out] = modes[k];
        std::copy(block.begin(), block.end(), data.begin() + static_cast<std::ptrdiff_t>(out * bs));
      }
      ++out;
    }
    modes.resize(out);
    data.resize(out * bs);
    e.modes_ = std::move(modes);
    e.data_ = std::move(data);
    return e;
  }

  const DeformationMatrix& theta() const { return theta_; }
  int dim() const { return n_; }
  std::size_t block_size() const { return static_cast<std::size_t>(n_) * n_; }

  /// Number of stored modes.
  std::size_t size() const { return modes_.size(); }
  bool empty() const { return modes_.empty(); }

  std::span<const MultiIndex> modes() const { return modes_; }
  const MultiIndex& mode(std::size_t k) const { return modes_[k]; }
  std::span<const Complex> block(std::size_t k) const {
    return {data_.data() + k * block_size(), block_size()};
  }
  std::span<const Complex> data() const { return data_; }

  /// Position of mode p in the storage, or size() when absent.
  std::size_t find(const MultiIndex& p) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), p);
    if (it == modes_.end() || *it != p) return size();
    return static_cast<std::size_t>(it - modes_.begin());
  }

  /// Matrix entry (row, col) of the coefficient at p; zero when p is absent.
  Complex at(const MultiIndex& p, int row = 0, int col = 0) const {
    const std::size_t k = find(p);
    if (k == size()) return {};
    return block(k)[static_cast<std::size_t>(row) * n_ + col];
  }

  /// Largest |p_i| over the support, 0 for the zero element.
  int radius() const {
    int r = 0;
    for (const auto& m : modes_) r = std::max(r, m.radius());
    return r;
  }

  bool compatible(const TorusElement& o) const { return theta_ == o.theta_ && n_ == o.n_; }

  /// Coefficient-wise identity (same support, bitwise equal blocks).
  bool operator==(const TorusElement& o) const {
    return compatible(o) && modes_ == o.modes_ && data_ == o.data_;
  }

 private:
  DeformationMatrix theta_;
  int n_;
  std::vector<MultiIndex> modes_;
  std::vector<Complex> data_;
};

/// Throws CompatibilityError unless `a` and `b` share theta and n.
inline void require_compatible(const TorusElement& a, const TorusElement& b, const char* op) {
  if (!(a.theta() == b.theta())) {
    throw CompatibilityError(std::string(op) + ": operands have different deformation matrices");
  }
  if (a.dim() != b.dim()) {
    throw CompatibilityError(std::string(op) + ": operands have matrix sizes " +
                             std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

/// Accumulates coefficients in arbitrary order; build() sorts and prunes.
class ElementBuilder {
 public:
  ElementBuilder(DeformationMatrix theta, int n) : theta_(theta), n_(n) {
    if (n < 1) throw ArgumentError("matrix size must be positive, got " + std::to_string(n));
  }

  ElementBuilder& add(const MultiIndex& p, int row, int col, Complex value) {
    if (row < 0 || row >= n_ || col < 0 || col >= n_) {
      throw ArgumentError("matrix entry out of range");
    }
    slot(p)[static_cast<std::size_t>(row) * n_ + col] += value;
    return *this;
  }

  /// Adds value * I_n at p.
  ElementBuilder& add_scalar(const MultiIndex& p, Complex value) {
    auto& b = slot(p);
    for (int i = 0; i < n_; ++i) b[static_cast<std::size_t>(i) * n_ + i] += value;
    return *this;
  }

  ElementBuilder& add_block(const MultiIndex& p, std::span<const Complex> block, Complex z = 1.0) {
    if (block.size() != static_cast<std::size_t>(n_) * n_) throw ArgumentError("block size mismatch");
    auto& b = slot(p);
    for (std::size_t i = 0; i < block.size(); ++i) b[i] += z * block[i];
    return *this;
  }

  TorusElement build(double scale = -1.0) const {
    std::vector<MultiIndex> modes;
    std::vector<Complex> data;
    modes.reserve(acc_.size());
    data.reserve(acc_.size() * static_cast<std::size_t>(n_) * n_);
    for (const auto& [p, b] : acc_) {
      modes.push_back(p);
      data.insert(data.end(), b.begin(), b.end());
    }
    return TorusElement::assemble(theta_, n_, std::move(modes), std::move(data), scale);
  }

 private:
  std::vector<Complex>& slot(const MultiIndex& p) {
    auto [it, fresh] = acc_.try_emplace(p);
    if (fresh) it->second.assign(static_cast<std::size_t>(n_) * n_, Complex{});
    return it->second;
  }

  DeformationMatrix theta_;
  int n_;
  std::map<MultiIndex, std::vector<Complex>> acc_;
};

}  // namespace nctorus
