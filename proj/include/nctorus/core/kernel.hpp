#pragma once

// Twisted convolution kernel. For canonical monomials U^p = U1^p1 U2^p2 U3^p3,
//   U^p U^q = exp(2 i pi sum_{i>j} theta_ij p_i q_j) U^{p+q},
// obtained by commuting U1^q1 left past U3^p3 and U2^p2, then U2^q2 past U3^p3.
// The phase is bilinear, so for fixed p it factors as
//   exp(2 i pi lambda1(p) q1) * exp(2 i pi lambda2(p) q2)
// with lambda1 = theta21 p2 + theta31 p3 and lambda2 = theta32 p3; the kernel
// tabulates the two factors once per input mode p.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "nctorus/core/element.hpp"

namespace nctorus {

struct ProductOptions {
  /// Drop output modes with |r_i| > radius on any axis.
  std::optional<int> radius;
  /// Worker count; 0 means kernel_threads().
  unsigned threads = 0;
};

/// Thread cap for the data-parallel kernels: NCTORUS_THREADS when set to a
/// positive integer, otherwise the hardware concurrency.
inline unsigned kernel_threads() {
  if (const char* env = std::getenv("NCTORUS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

namespace detail {

// Plain complex multiply; std::complex operator* goes through the
// NaN-recovering __muldc3 path, which dominates the inner loop otherwise.
inline Complex cmul(const Complex& x, const Complex& y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline double max_block_norm(const TorusElement& a) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, frobenius(a.block(k)));
  return m;
}

struct Box {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{-1, -1, -1};

  static Box of(const TorusElement& a) {
    Box b;
    if (a.empty()) return b;
    b.lo = b.hi = a.mode(0).p;
    for (const auto& m : a.modes()) {
      for (int i = 0; i < 3; ++i) {
        b.lo[i] = std::min(b.lo[i], m[i]);
        b.hi[i] = std::max(b.hi[i], m[i]);
      }
    }
    return b;
  }
  bool empty() const { return hi[0] < lo[0] || hi[1] < lo[1] || hi[2] < lo[2]; }
  long long extent(int i) const { return static_cast<long long>(hi[i]) - lo[i] + 1; }
  double volume() const {
    return empty() ? 0.0 : static_cast<double>(extent(0)) * extent(1) * extent(2);
  }
  bool contains(const MultiIndex& r) const {
    for (int i = 0; i < 3; ++i)
      if (r[i] < lo[i] || r[i] > hi[i]) return false;
    return true;
  }
};

// Phase factors of U^p U^q for fixed p, tabulated over b's q1 and q2 ranges.
class PhaseRows {
 public:
  PhaseRows(const DeformationMatrix& theta, const Box& bbox)
      : theta_(theta), bbox_(bbox), trivial_(theta == DeformationMatrix{}) {
    if (!trivial_) {
      row1_.resize(static_cast<std::size_t>(bbox.extent(0)));
      row2_.resize(static_cast<std::size_t>(bbox.extent(1)));
    }
  }

  void load(const MultiIndex& p) {
    if (trivial_) return;
    long double l1 = static_cast<long double>(theta_(1, 0)) * p[1] +
                     static_cast<long double>(theta_(2, 0)) * p[2];
    long double l2 = static_cast<long double>(theta_(2, 1)) * p[2];
    l1 -= std::floor(l1);
    l2 -= std::floor(l2);
    for (std::size_t i = 0; i < row1_.size(); ++i) row1_[i] = unit_phase(l1 * (bbox_.lo[0] + static_cast<long long>(i)));
    for (std::size_t i = 0; i < row2_.size(); ++i) row2_[i] = unit_phase(l2 * (bbox_.lo[1] + static_cast<long long>(i)));
  }

  Complex operator()(const MultiIndex& q) const {
    if (trivial_) return 1.0;
    return cmul(row1_[static_cast<std::size_t>(q[0] - bbox_.lo[0])],
                row2_[static_cast<std::size_t>(q[1] - bbox_.lo[1])]);
  }

 private:
  DeformationMatrix theta_;
  Box bbox_;
  bool trivial_;
  std::vector<Complex> row1_, row2_;
};

// acc += ph * A * B for row-major n x n blocks.
inline void accumulate_block(Complex* acc, const Complex* a, const Complex* b, Complex ph, int n) {
  if (n == 1) {
    acc[0] += cmul(ph, cmul(a[0], b[0]));
    return;
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = cmul(ph, a[i * n + k]);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) acc[i * n + j] += cmul(aik, b[k * n + j]);
    }
  }
}

// Contiguous range of b's modes with first component in [q1lo, q1hi].
inline std::pair<std::size_t, std::size_t> first_axis_range(const TorusElement& b, int q1lo, int q1hi) {
  auto modes = b.modes();
  auto first = std::lower_bound(modes.begin(), modes.end(), q1lo,
                                [](const MultiIndex& m, int v) { return m[0] < v; });
  auto last = std::upper_bound(modes.begin(), modes.end(), q1hi,
                               [](int v, const MultiIndex& m) { return v < m[0]; });
  return {static_cast<std::size_t>(first - modes.begin()), static_cast<std::size_t>(last - modes.begin())};
}

// Dense accumulation over the output box. Output slabs along the first axis
// are split across workers; within each output mode contributions arrive in
// increasing order of the left input mode, whatever the schedule.
inline TorusElement dense_product(const TorusElement& a, const TorusElement& b, const Box& out,
                                  const Box& bbox, unsigned threads, double scale) {
  const int n = a.dim();
  const std::size_t bs = a.block_size();
  const long long e1 = out.extent(0), e2 = out.extent(1), e3 = out.extent(2);
  std::vector<Complex> acc(static_cast<std::size_t>(e1 * e2 * e3) * bs);

  auto work = [&](int r1lo, int r1hi) {
    PhaseRows phases(a.theta(), bbox);
    for (std::size_t ia = 0; ia < a.size(); ++ia) {
      const MultiIndex& p = a.mode(ia);
      auto [qb, qe] = first_axis_range(b, r1lo - p[0], r1hi - p[0]);
      if (qb == qe) continue;
      phases.load(p);
      const Complex* ablk = a.block(ia).data();
      for (std::size_t ib = qb; ib < qe; ++ib) {
        const MultiIndex r = p + b.mode(ib);
        if (!out.contains(r)) continue;
        const std::size_t cell = static_cast<std::size_t>(
            ((r[0] - out.lo[0]) * e2 + (r[1] - out.lo[1])) * e3 + (r[2] - out.lo[2]));
        accumulate_block(acc.data() + cell * bs, ablk, b.block(ib).data(), phases(b.mode(ib)), n);
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::clamp<long long>(threads, 1, e1));
  if (workers == 1) {
    work(out.lo[0], out.hi[0]);
  } else {
    std::vector<std::thread> pool;
    const long long step = (e1 + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const long long lo = out.lo[0] + w * step;
      const long long hi = std::min<long long>(out.hi[0], lo + step - 1);
      if (lo > hi) break;
      pool.emplace_back(work, static_cast<int>(lo), static_cast<int>(hi));
    }
    for (auto& t : pool) t.join();
  }

  std::vector<MultiIndex> modes;
  std::vector<Complex> data;
  for (long long c = 0; c < e1 * e2 * e3; ++c) {
    const Complex* blk = acc.data() + static_cast<std::size_t>(c) * bs;
    if (std::all_of(blk, blk + bs, [](const Complex& z) { return z == Complex{}; })) continue;
    modes.emplace_back(static_cast<int>(out.lo[0] + c / (e2 * e3)),
                       static_cast<int>(out.lo[1] + (c / e3) % e2),
                       static_cast<int>(out.lo[2] + c % e3));
    data.insert(data.end(), blk, blk + bs);
  }
  return TorusElement::assemble(a.theta(), n, std::move(modes), std::move(data), scale);
}

inline TorusElement sparse_product(const TorusElement& a, const TorusElement& b, const Box& out,
                                   const Box& bbox, double scale) {
  const int n = a.dim();
  const std::size_t bs = a.block_size();
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> slot;
  std::vector<MultiIndex> modes;
  std::vector<Complex> acc;
  PhaseRows phases(a.theta(), bbox);
  for (std::size_t ia = 0; ia < a.size(); ++ia) {
    const MultiIndex& p = a.mode(ia);
    phases.load(p);
    for (std::size_t ib = 0; ib < b.size(); ++ib) {
      const MultiIndex r = p + b.mode(ib);
      if (!out.contains(r)) continue;
      auto [it, fresh] = slot.try_emplace(r, modes.size());
      if (fresh) {
        modes.push_back(r);
        acc.resize(acc.size() + bs);
      }
      accumulate_block(acc.data() + it->second * bs, a.block(ia).data(), b.block(ib).data(),
                       phases(b.mode(ib)), n);
    }
  }
  std::vector<std::size_t> order(modes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return modes[x] < modes[y]; });
  std::vector<MultiIndex> sorted_modes;
  std::vector<Complex> sorted;
  sorted_modes.reserve(modes.size());
  sorted.reserve(acc.size());
  for (std::size_t i : order) {
    sorted_modes.push_back(modes[i]);
    sorted.insert(sorted.end(), acc.begin() + static_cast<std::ptrdiff_t>(i * bs),
                  acc.begin() + static_cast<std::ptrdiff_t>((i + 1) * bs));
  }
  return TorusElement::assemble(a.theta(), n, std::move(sorted_modes), std::move(sorted), scale);
}

}  // namespace detail

/// Twisted product a * b. Throws CompatibilityError on mismatched operands.
inline TorusElement mul(const TorusElement& a, const TorusElement& b, const ProductOptions& opts) {
  require_compatible(a, b, "mul");
  if (a.empty() || b.empty()) return TorusElement(a.theta(), a.dim());

  const detail::Box abox = detail::Box::of(a);
  const detail::Box bbox = detail::Box::of(b);
  detail::Box out;
  for (int i = 0; i < 3; ++i) {
    out.lo[i] = abox.lo[i] + bbox.lo[i];
    out.hi[i] = abox.hi[i] + bbox.hi[i];
    if (opts.radius) {
      out.lo[i] = std::max(out.lo[i], -*opts.radius);
      out.hi[i] = std::min(out.hi[i], *opts.radius);
    }
  }
  if (out.empty()) return TorusElement(a.theta(), a.dim());

  const double scale = detail::max_block_norm(a) * detail::max_block_norm(b);
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  const double cells = out.volume();
  const bool dense = cells * static_cast<double>(a.block_size()) <= double(1 << 25) &&
                     cells <= 16.0 * pairs + 4096.0;
  if (dense) {
    return detail::dense_product(a, b, out, bbox, opts.threads ? opts.threads : kernel_threads(), scale);
  }
  return detail::sparse_product(a, b, out, bbox, scale);
}

inline TorusElement mul(const TorusElement& a, const TorusElement& b) { return mul(a, b, ProductOptions{}); }

}  // namespace nctorus
