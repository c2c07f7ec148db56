#pragma once

// Clock-and-shift representation of A_theta for theta12 = m / n_rep,
// theta13 = theta23 = 0: U1 -> C (diagonal, C_jj = w^j), U2 -> S (cyclic shift
// e_j -> e_{j+1}), U3 -> e^{2 i pi phi} I, with w = e^{2 i pi m / n_rep}, so that
// C S = w S C. Used only as a brute-force check of the sparse engine.

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <string>

#include "nctorus/core/algebra.hpp"

namespace nctorus {

using DenseMatrix = Eigen::MatrixXcd;

class ClockShiftRep {
 public:
  ClockShiftRep(int n_rep, int m, double phi = 0.0) : n_rep_(n_rep), m_(m), phi_(phi) {
    if (n_rep < 1) throw ArgumentError("representation dimension must be positive");
    if (std::gcd(m, n_rep) != 1) {
      throw ArgumentError("m and n_rep must be coprime, got m=" + std::to_string(m) +
                          " n_rep=" + std::to_string(n_rep));
    }
  }

  int n_rep() const { return n_rep_; }
  int m() const { return m_; }
  double phi() const { return phi_; }

  /// Same representation with U3 -> e^{2 i pi phi} I.
  ClockShiftRep with_phi(double phi) const { return {n_rep_, m_, phi}; }

  DeformationMatrix theta() const { return {static_cast<double>(m_) / n_rep_, 0.0, 0.0}; }

  DenseMatrix clock() const { return monomial({1, 0, 0}); }
  DenseMatrix shift() const { return monomial({0, 1, 0}); }

  /// Image of U1^p1 U2^p2 U3^p3: (C^p1 S^p2)_{r,c} = w^{p1 r} [r = c + p2 mod n_rep],
  /// times e^{2 i pi phi p3}.
  DenseMatrix monomial(const MultiIndex& p) const {
    DenseMatrix out = DenseMatrix::Zero(n_rep_, n_rep_);
    const Complex z3 = unit_phase(static_cast<long double>(phi_) * p[2]);
    for (int c = 0; c < n_rep_; ++c) {
      const int r = mod(c + p[1]);
      const long long e = static_cast<long long>(p[0]) * m_ % n_rep_ * r % n_rep_;
      out(r, c) = z3 * unit_phase(static_cast<long double>(e) / n_rep_);
    }
    return out;
  }

  /// Throws PreconditionError unless theta12 == m / n_rep (mod 1) and theta13 = theta23 = 0.
  void require_matches(const DeformationMatrix& theta) const {
    const double d = theta.theta12() - static_cast<double>(m_) / n_rep_;
    const double off = std::abs(d - std::round(d));
    if (off > 1e-14 || theta.theta13() != 0.0 || theta.theta23() != 0.0) {
      throw PreconditionError("element deformation does not match clock-shift representation", off);
    }
  }

 private:
  int mod(long long v) const {
    const long long r = v % n_rep_;
    return static_cast<int>(r < 0 ? r + n_rep_ : r);
  }

  int n_rep_;
  int m_;
  double phi_;
};

/// sum_p a_p (x) C^p1 S^p2 e^{2 i pi phi p3}, an (n n_rep) x (n n_rep) matrix;
/// block (i, j) of size n_rep carries (a_p)_ij.
inline DenseMatrix represent(const TorusElement& a, const ClockShiftRep& rep) {
  rep.require_matches(a.theta());
  const int n = a.dim();
  const int d = rep.n_rep();
  DenseMatrix out = DenseMatrix::Zero(n * d, n * d);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const DenseMatrix img = rep.monomial(a.mode(k));
    auto blk = a.block(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex c = blk[static_cast<std::size_t>(i) * n + j];
        if (c != Complex{}) out.block(i * d, j * d, d, d) += c * img;
      }
  }
  return out;
}

/// (1 / n_rep) tr(represent(a)), averaged over phi = j / n_rep, j = 0..n_rep-1.
/// Equals trace(a) when every |p_i| < n_rep; otherwise throws PreconditionError
/// (the representation would alias the mode onto the identity).
inline Complex oracle_trace(const TorusElement& a, const ClockShiftRep& rep) {
  rep.require_matches(a.theta());
  const int d = rep.n_rep();
  if (a.radius() >= d) {
    throw PreconditionError("oracle_trace: support radius " + std::to_string(a.radius()) +
                                " aliases in dimension " + std::to_string(d),
                            a.radius());
  }
  Complex sum{};
  for (int j = 0; j < d; ++j) {
    sum += represent(a, rep.with_phi(static_cast<double>(j) / d)).trace();
  }
  return sum / static_cast<double>(d) / static_cast<double>(d);
}

}  // namespace nctorus
