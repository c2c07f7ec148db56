#pragma once

#include <cstdint>
#include <random>

#include "nctorus/core/algebra.hpp"

namespace nctorus {

/// Seeded source for the randomized suites. Draws are built from raw
/// mt19937_64 output, so a seed gives the same elements on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo = -1.0, double hi = 1.0) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
  }

  Complex complex() { return {uniform(), uniform()}; }

  /// `terms` random modes with |p_i| <= radius and entries uniform in the unit square.
  TorusElement element(const DeformationMatrix& theta, int n, int radius, int terms = 6) {
    ElementBuilder b(theta, n);
    for (int t = 0; t < terms; ++t) {
      const MultiIndex p(integer(-radius, radius), integer(-radius, radius), integer(-radius, radius));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) b.add(p, r, c, complex());
    }
    return b.build();
  }

  /// (x + x*) / 2 for a random x.
  TorusElement hermitian(const DeformationMatrix& theta, int n, int radius, int terms = 6) {
    const TorusElement x = element(theta, n, radius, terms);
    return scale(0.5, x + adjoint(x));
  }

  /// z U^p with |z| = 1 and |p_i| <= radius; for n > 1 a diagonal of such
  /// monomials, one per row.
  TorusElement monomial_unitary(const DeformationMatrix& theta, int n, int radius) {
    ElementBuilder b(theta, n);
    for (int r = 0; r < n; ++r) {
      const MultiIndex p(integer(-radius, radius), integer(-radius, radius), integer(-radius, radius));
      b.add(p, r, r, unit_phase(static_cast<long double>(uniform(0.0, 1.0))));
    }
    return b.build();
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace nctorus
