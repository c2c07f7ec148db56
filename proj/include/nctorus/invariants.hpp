#pragma once

// Randomized invariant suites shared by `nctorus selftest` and the test
// binaries. Each suite reports the worst measured residual against its tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nctorus/core/algebra.hpp"
#include "nctorus/gauge.hpp"
#include "nctorus/io.hpp"
#include "nctorus/oracle.hpp"
#include "nctorus/random.hpp"

namespace nctorus {

/// Largest entrywise |x_p - y_p| over the union of supports.
inline double max_coeff_diff(const TorusElement& x, const TorusElement& y) {
  require_compatible(x, y, "max_coeff_diff");
  const TorusElement d = x - y;
  double m = 0.0;
  for (const Complex& z : d.data()) m = std::max(m, std::abs(z));
  return m;
}

/// Phi(a0, a1, a2, a3) = sum eps tr(a0 d_l a1 d_m a2 d_n a3).
inline Complex cyclic_cocycle3(const TorusElement& a0, const TorusElement& a1, const TorusElement& a2,
                               const TorusElement& a3) {
  Complex sum{};
  for (const auto& t : kEpsilonTerms) {
    const TorusElement left = mul(a0, derive(t.lambda, a1));
    const TorusElement right = mul(derive(t.mu, a2), derive(t.nu, a3));
    sum += t.sign * trace_product(left, right);
  }
  return sum;
}

struct SuiteResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  bool passed = false;
};

struct SuiteOptions {
  std::uint64_t seed = 20240607;
  int cases = 100;
  /// Deformations cycled through the generic suites.
  std::vector<DeformationMatrix> thetas{
      {0.0, 0.0, 0.0}, {0.2, 0.0, 0.0}, {1.0 / std::numbers::sqrt2, 0.3, 0.1}, {0.25, -0.4, 0.7}};
};

namespace detail {

template <class Body>
SuiteResult run_suite(const std::string& name, double tol, const SuiteOptions& opt, std::uint64_t salt,
                      Body&& body) {
  Sampler s(opt.seed ^ (salt * 0x9e3779b97f4a7c15ull));
  SuiteResult r{name, 0.0, tol, opt.cases, true};
  for (int i = 0; i < opt.cases; ++i) {
    const DeformationMatrix& th = opt.thetas[static_cast<std::size_t>(i) % opt.thetas.size()];
    const int n = 1 + (i / static_cast<int>(opt.thetas.size())) % 2;
    r.worst = std::max(r.worst, body(s, th, n));
  }
  r.passed = r.worst <= tol;
  return r;
}

}  // namespace detail

/// (ab)* = b*a*, a** = a, (za)* = conj(z) a*, coefficient-wise.
inline SuiteResult star_laws_suite(const SuiteOptions& opt) {
  return detail::run_suite("star-laws", 1e-14, opt, 1, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a = s.element(th, n, 3), b = s.element(th, n, 3);
    const Complex z = s.complex();
    return std::max({max_coeff_diff(adjoint(mul(a, b)), mul(adjoint(b), adjoint(a))),
                     max_coeff_diff(adjoint(adjoint(a)), a),
                     max_coeff_diff(adjoint(scale(z, a)), scale(std::conj(z), adjoint(a)))});
  });
}

/// |tr(ab) - tr(ba)| / (l1(a) l1(b)).
inline SuiteResult traciality_suite(const SuiteOptions& opt) {
  return detail::run_suite("traciality", 1e-13, opt, 2, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a = s.element(th, n, 3), b = s.element(th, n, 3);
    return std::abs(trace(mul(a, b)) - trace(mul(b, a))) / (l1(a) * l1(b));
  });
}

/// l1((ab)c - a(bc)) / (l1(a) l1(b) l1(c)).
inline SuiteResult associativity_suite(const SuiteOptions& opt) {
  return detail::run_suite("associativity", 1e-12, opt, 3, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a = s.element(th, n, 3), b = s.element(th, n, 3), c = s.element(th, n, 3);
    return l1(mul(mul(a, b), c) - mul(a, mul(b, c))) / (l1(a) * l1(b) * l1(c));
  });
}

/// d_i(ab) = d_i(a) b + a d_i(b), coefficient-wise, all three axes.
inline SuiteResult leibniz_suite(const SuiteOptions& opt) {
  return detail::run_suite("leibniz", 1e-13, opt, 4, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a = s.element(th, n, 3), b = s.element(th, n, 3);
    double w = 0.0;
    for (int i = 1; i <= 3; ++i) {
      w = std::max(w, max_coeff_diff(derive(i, mul(a, b)), mul(derive(i, a), b) + mul(a, derive(i, b))));
    }
    return w;
  });
}

/// d_i(a*) = (d_i a)*, coefficient-wise.
inline SuiteResult derivation_star_suite(const SuiteOptions& opt) {
  return detail::run_suite("derivation-star", 1e-13, opt, 5, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a = s.element(th, n, 3);
    double w = 0.0;
    for (int i = 1; i <= 3; ++i) w = std::max(w, max_coeff_diff(derive(i, adjoint(a)), adjoint(derive(i, a))));
    return w;
  });
}

/// trace(d_i a) == 0 exactly.
inline SuiteResult trace_derivation_suite(const SuiteOptions& opt) {
  return detail::run_suite("trace-kills-derivations", 0.0, opt, 6, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a = s.element(th, n, 3);
    double w = 0.0;
    for (int i = 1; i <= 3; ++i) w = std::max(w, std::abs(trace(derive(i, a))));
    return w;
  });
}

namespace detail {

// Natural size of Phi(a0, ..., a3): l1(a0) times the l1 norms of the three
// differentiated arguments, each derivative costing at most 2 pi radius.
inline double cocycle_scale(const TorusElement& a0, const TorusElement& a1, const TorusElement& a2,
                            const TorusElement& a3) {
  double s = l1(a0);
  for (const TorusElement* a : {&a1, &a2, &a3}) s *= kTwoPi * std::max(1, a->radius()) * l1(*a);
  return s;
}

}  // namespace detail

/// Phi(1, a1, a2, a3) = 0: the trace of an exact top form vanishes.
inline SuiteResult closedness_suite(const SuiteOptions& opt) {
  return detail::run_suite("closedness", 1e-12, opt, 7, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement e = one(th, n);
    const TorusElement a1 = s.element(th, n, 2), a2 = s.element(th, n, 2), a3 = s.element(th, n, 2);
    return std::abs(cyclic_cocycle3(e, a1, a2, a3)) / detail::cocycle_scale(e, a1, a2, a3);
  });
}

/// Phi(a0, a1, a2, a3) = -Phi(a3, a0, a1, a2).
inline SuiteResult cyclicity_suite(const SuiteOptions& opt) {
  return detail::run_suite("cyclic-cocycle", 1e-12, opt, 8, [](Sampler& s, const DeformationMatrix& th, int n) {
    const TorusElement a0 = s.element(th, n, 2), a1 = s.element(th, n, 2), a2 = s.element(th, n, 2),
                       a3 = s.element(th, n, 2);
    return std::abs(cyclic_cocycle3(a0, a1, a2, a3) + cyclic_cocycle3(a3, a0, a1, a2)) /
           detail::cocycle_scale(a0, a1, a2, a3);
  });
}

namespace detail {

inline double dense_diff(const DenseMatrix& x, const DenseMatrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

}  // namespace detail

/// mul, adjoint and trace against the clock-shift representation, n_rep = 17,
/// theta12 = m / 17 with m drawn per case, support radius <= 3.
inline SuiteResult oracle_suite(const SuiteOptions& opt, int n_rep = 17) {
  SuiteOptions o = opt;
  o.thetas = {DeformationMatrix{}};
  return detail::run_suite("oracle-equivalence", 1e-12, o, 9, [n_rep](Sampler& s, const DeformationMatrix&, int n) {
    int m = s.integer(1, n_rep - 1);
    const ClockShiftRep rep(n_rep, m, s.uniform(0.0, 1.0));
    const DeformationMatrix th = rep.theta();
    const TorusElement a = s.element(th, n, 3), b = s.element(th, n, 3);
    const double w_mul = detail::dense_diff(represent(mul(a, b), rep), represent(a, rep) * represent(b, rep));
    const double w_adj = detail::dense_diff(represent(adjoint(a), rep), represent(a, rep).adjoint());
    const double w_tr = std::abs(oracle_trace(mul(a, b), rep) - trace(mul(a, b)));
    return std::max({w_mul, w_adj, w_tr});
  });
}

/// Error paths: mismatched operands raise CompatibilityError, a corrupted
/// element file raises ParseError with its line number. Worst = 0 on success.
inline SuiteResult error_paths_suite() {
  SuiteResult r{"error-paths", 0.0, 0.0, 2, true};
  try {
    (void)mul(one({0.1, 0, 0}, 1), one({0.2, 0, 0}, 1));
    r.worst = 1.0;
  } catch (const CompatibilityError&) {
  }
  std::istringstream corrupted("nctorus v1 N=1 theta=0 0 0\n0 0 0 0 0 1 0\n1 0 0 0 0 x 0\n");
  try {
    (void)read_element(corrupted);
    r.worst = 1.0;
  } catch (const ParseError& e) {
    if (e.line() != 3) r.worst = 1.0;
  }
  r.passed = r.worst == 0.0;
  return r;
}

inline std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt) {
  return {star_laws_suite(opt),        traciality_suite(opt),       associativity_suite(opt),
          leibniz_suite(opt),          derivation_star_suite(opt),  trace_derivation_suite(opt),
          closedness_suite(opt),       cyclicity_suite(opt),        oracle_suite(opt),
          error_paths_suite()};
}

}  // namespace nctorus
