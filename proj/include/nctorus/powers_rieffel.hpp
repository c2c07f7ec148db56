#pragma once

// Powers-Rieffel projection in A_theta with theta12 = alpha (theta13 = theta23 = 0):
//
//   e = X + X* + g(U2),   X = f(U2) U1 = U1 f(. - alpha)(U2),
//
// using U1 h(U2) U1* = h(. + alpha)(U2). Expanding e^2 in powers of U1 gives
//   U1^0:  g^2 + f^2 + f(. - alpha)^2 = g
//   U1^1:  f (g + g(. + alpha)) = f
//   U1^2:  f f(. + alpha) = 0
// which the profiles below satisfy exactly: g rises on [0, eps], is 1 on
// [eps, alpha], falls as 1 - g(t - alpha) on [alpha, alpha + eps], and
// f = sqrt(g - g^2) lives on the rising window.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "nctorus/core/algebra.hpp"

namespace nctorus {

/// Function on the circle h(t) = sum_k c_k e^{2 i pi k t}, |k| <= max_mode().
class CircleFunction {
 public:
  CircleFunction() = default;
  CircleFunction(std::vector<Complex> coeffs_from_minus_k, bool real_valued)
      : coeffs_(std::move(coeffs_from_minus_k)), real_(real_valued) {
    if (coeffs_.size() % 2 == 0) throw ArgumentError("circle function needs an odd coefficient count");
    if (real_) {
      const int kmax = max_mode();
      for (int k = 1; k <= kmax; ++k) {
        if (coefficient(-k) != std::conj(coefficient(k))) {
          throw ArgumentError("real-valued circle function must have conjugate-symmetric coefficients");
        }
      }
    }
  }

  int max_mode() const { return static_cast<int>(coeffs_.size() / 2); }
  bool real_valued() const { return real_; }

  Complex coefficient(int k) const {
    const int kmax = max_mode();
    if (k < -kmax || k > kmax) return {};
    return coeffs_[static_cast<std::size_t>(k + kmax)];
  }

  Complex operator()(double t) const {
    Complex s{};
    const int kmax = max_mode();
    for (int k = -kmax; k <= kmax; ++k) s += coefficient(k) * unit_phase(static_cast<long double>(k) * t);
    return s;
  }

  /// t -> h(t + s).
  CircleFunction shifted(double s) const {
    std::vector<Complex> c(coeffs_.size());
    const int kmax = max_mode();
    for (int k = 0; k <= kmax; ++k) {
      const Complex ph = unit_phase(static_cast<long double>(k) * s);
      c[static_cast<std::size_t>(kmax + k)] = coefficient(k) * ph;
      c[static_cast<std::size_t>(kmax - k)] = coefficient(-k) * std::conj(ph);
    }
    return CircleFunction(std::move(c), real_);
  }

  /// h(U2) as an element of M_1(A_theta).
  TorusElement on_u2(const DeformationMatrix& theta) const {
    ElementBuilder b(theta, 1);
    const int kmax = max_mode();
    for (int k = -kmax; k <= kmax; ++k) b.add({0, k, 0}, 0, 0, coefficient(k));
    return b.build(0.0);
  }

 private:
  std::vector<Complex> coeffs_{Complex{}};
  bool real_ = false;
};

/// U1 h(U2) U1* = h(. + alpha)(U2) when theta12 = alpha. The projection builder
/// and the grid residual both go through this one helper.
inline CircleFunction conjugate_by_u1(const CircleFunction& h, double alpha) { return h.shifted(alpha); }

inline constexpr double kDefaultProjectionTol = 1e-6;

struct PRConfig {
  double alpha = 0.25;
  double eps = 0.125;
  int trunc = 64;
  int samples = 1024;

  /// Throws ConfigError unless 0 < alpha < 1/2, 0 < eps <= alpha,
  /// eps < 1 - 2 alpha, trunc >= 1 and samples >= 8 trunc.
  void validate() const {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("alpha must lie in (0, 1/2), got " + std::to_string(alpha));
    if (!(eps > 0.0 && eps <= alpha)) throw ConfigError("eps must lie in (0, alpha], got " + std::to_string(eps));
    if (!(eps < 1.0 - 2.0 * alpha)) throw ConfigError("eps must be below 1 - 2 alpha");
    if (trunc < 1) throw ConfigError("trunc must be positive");
    if (samples < 8 * trunc) throw ConfigError("samples must be at least 8 * trunc");
  }

  DeformationMatrix theta() const { return {alpha, 0.0, 0.0}; }
};

namespace detail {

// C-infinity step 0 -> 1 on [0, 1]: sigma(x) / (sigma(x) + sigma(1 - x)),
// sigma(x) = exp(-1/x). psi(x) + psi(1 - x) = 1.
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / x - 1.0 / (1.0 - x)));
}

inline double wrap01(double t) { return t - std::floor(t); }

}  // namespace detail

/// Pointwise profiles of g and f (before any Fourier truncation).
struct BumpProfile {
  double alpha, eps;

  double g(double t) const {
    t = detail::wrap01(t);
    if (t < eps) return detail::smooth_step(t / eps);
    if (t <= alpha) return 1.0;
    if (t < alpha + eps) return detail::smooth_step(1.0 - (t - alpha) / eps);
    return 0.0;
  }

  double f(double t) const {
    t = detail::wrap01(t);
    if (t <= 0.0 || t >= eps) return 0.0;
    const double x = t / eps;
    return std::sqrt(detail::smooth_step(x) * detail::smooth_step(1.0 - x));
  }
};

struct Bump {
  CircleFunction g;
  CircleFunction f;
};

namespace detail {

// Coefficients |k| <= kmax of a real function from `samples` equispaced values.
// The k >= 0 half is computed and mirrored so the result is exactly conjugate-symmetric.
template <class Fn>
std::vector<Complex> real_dft(Fn&& fn, int kmax, int samples) {
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) v[static_cast<std::size_t>(j)] = fn(static_cast<double>(j) / samples);
  std::vector<Complex> c(static_cast<std::size_t>(2 * kmax + 1));
  for (int k = 0; k <= kmax; ++k) {
    Complex s{};
    for (int j = 0; j < samples; ++j) {
      const long long kj = (static_cast<long long>(k) * j) % samples;
      s += v[static_cast<std::size_t>(j)] * unit_phase(-static_cast<long double>(kj) / samples);
    }
    s /= static_cast<double>(samples);
    c[static_cast<std::size_t>(kmax + k)] = s;
    c[static_cast<std::size_t>(kmax - k)] = std::conj(s);
  }
  c[static_cast<std::size_t>(kmax)] = c[static_cast<std::size_t>(kmax)].real();
  return c;
}

}  // namespace detail

/// Fourier truncations of g and f. The mean of g is set to alpha, its exact
/// value: the falling ramp mirrors the rising one, so the two ramps integrate to eps.
inline Bump build_bump(const PRConfig& cfg) {
  cfg.validate();
  const BumpProfile prof{cfg.alpha, cfg.eps};
  auto gc = detail::real_dft([&](double t) { return prof.g(t); }, cfg.trunc, cfg.samples);
  auto fc = detail::real_dft([&](double t) { return prof.f(t); }, cfg.trunc, cfg.samples);
  gc[static_cast<std::size_t>(cfg.trunc)] = cfg.alpha;
  return {CircleFunction(std::move(gc), true), CircleFunction(std::move(fc), true)};
}

/// max over the grid of |g^2 + f^2 + f(t - alpha)^2 - g|, |f(t) f(t + alpha)| and,
/// on supp f, |g(t) + g(t + alpha) - 1|: the three projection identities on the exact profiles.
struct ProfileResiduals {
  double degree0 = 0.0;
  double degree1 = 0.0;
  double degree2 = 0.0;
};

inline ProfileResiduals profile_residuals(const PRConfig& cfg) {
  cfg.validate();
  const BumpProfile prof{cfg.alpha, cfg.eps};
  ProfileResiduals r;
  for (int j = 0; j < cfg.samples; ++j) {
    const double t = static_cast<double>(j) / cfg.samples;
    const double g = prof.g(t), f = prof.f(t);
    const double fm = prof.f(t - cfg.alpha), fp = prof.f(t + cfg.alpha);
    r.degree0 = std::max(r.degree0, std::abs(g * g + f * f + fm * fm - g));
    r.degree2 = std::max(r.degree2, std::abs(f * fp));
    if (f != 0.0) r.degree1 = std::max(r.degree1, std::abs(f * (g + prof.g(t + cfg.alpha)) - f));
  }
  return r;
}

/// e = (U1 f_s(U2))* + g(U2) + U1 f_s(U2) with f_s = f(. - alpha), i.e. the
/// off-diagonal term is f(U2) U1. N = 1, theta12 = alpha. e* = e exactly.
inline TorusElement build_projection(const PRConfig& cfg) {
  const Bump bump = build_bump(cfg);
  const DeformationMatrix theta = cfg.theta();
  // f(U2) U1 = U1 (U1* f(U2) U1) = U1 f(. - alpha)(U2).
  const CircleFunction fs = conjugate_by_u1(bump.f, -cfg.alpha);
  ElementBuilder xb(theta, 1);
  for (int k = -cfg.trunc; k <= cfg.trunc; ++k) xb.add({1, k, 0}, 0, 0, fs.coefficient(k));
  const TorusElement x = xb.build(0.0);
  return add(add(adjoint(x), bump.g.on_u2(theta)), x);
}

inline double projection_defect(const TorusElement& e) { return l1(mul(e, e) - e); }

/// U = (U3 + U3*)/2 + (2e - 1)(U3 - U3*)/2 = e U3 + (1 - e) U3*.
/// Throws PreconditionError if l1(e^2 - e) > tol_proj or e is not hermitian.
inline TorusElement build_unitary(const TorusElement& e, double tol_proj = kDefaultProjectionTol) {
  const double herm = l1(e - adjoint(e));
  if (herm > kDefaultHermitianTol * std::max(1.0, l1(e))) {
    throw PreconditionError("build_unitary: e is not hermitian", herm);
  }
  const double defect = projection_defect(e);
  if (!(defect <= tol_proj)) {
    throw PreconditionError("build_unitary: projection defect " + std::to_string(defect) +
                                " exceeds tolerance " + std::to_string(tol_proj),
                            defect);
  }
  const DeformationMatrix& theta = e.theta();
  const int n = e.dim();
  const TorusElement u3 = TorusElement::monomial(theta, n, {0, 0, 1});
  const TorusElement u3s = TorusElement::monomial(theta, n, {0, 0, -1});
  const TorusElement two_e_minus_1 = scale(2.0, e) - one(theta, n);
  return scale(0.5, u3 + u3s) + mul(two_e_minus_1, scale(0.5, u3 - u3s));
}

/// u^n by binary exponentiation, n >= 1.
inline TorusElement power(const TorusElement& u, int n) {
  if (n < 1) throw ArgumentError("power: exponent must be positive, got " + std::to_string(n));
  TorusElement result;
  bool have = false;
  TorusElement base = u;
  while (true) {
    if (n & 1) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    n >>= 1;
    if (n == 0) break;
    base = mul(base, base);
  }
  return result;
}

}  // namespace nctorus
