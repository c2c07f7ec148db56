#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "nctorus/gauge.hpp"
#include "nctorus/invariants.hpp"
#include "nctorus/powers_rieffel.hpp"
#include "nctorus/random.hpp"

using namespace nctorus;

namespace {

constexpr double kPi = std::numbers::pi;
const DeformationMatrix kIrrational{1.0 / std::numbers::sqrt2, 0.0, 0.0};

TorusElement mono(const DeformationMatrix& th, int n, MultiIndex p) { return TorusElement::monomial(th, n, p); }

// Commutative (theta = 0, N = 1) Fourier series as a plain map, with its own
// convolution. Shares nothing with the library kernel.
using Series = std::map<std::array<int, 3>, Complex>;

Series to_series(const TorusElement& a) {
  Series s;
  for (std::size_t k = 0; k < a.size(); ++k) s[a.mode(k).p] = a.block(k)[0];
  return s;
}

Series times(const Series& a, const Series& b) {
  Series out;
  for (const auto& [p, x] : a)
    for (const auto& [q, y] : b) out[{p[0] + q[0], p[1] + q[1], p[2] + q[2]}] += x * y;
  return out;
}

Series d(int axis, const Series& a) {
  Series out;
  for (const auto& [p, x] : a) out[p] = Complex(0.0, 2.0 * kPi * p[static_cast<std::size_t>(axis - 1)]) * x;
  return out;
}

Complex constant_term(const Series& a) {
  auto it = a.find({0, 0, 0});
  return it == a.end() ? Complex{} : it->second;
}

Complex brute_force_cs(const std::array<Series, 3>& a, double k) {
  const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  const double sign[6] = {1, -1, -1, 1, 1, -1};
  Complex sum{};
  for (int t = 0; t < 6; ++t) {
    const Series& al = a[static_cast<std::size_t>(perms[t][0] - 1)];
    const Series& am = a[static_cast<std::size_t>(perms[t][1] - 1)];
    const Series& an = a[static_cast<std::size_t>(perms[t][2] - 1)];
    sum += sign[t] * (constant_term(times(al, d(perms[t][1], an))) +
                      (2.0 / 3.0) * constant_term(times(times(al, am), an)));
  }
  return k / (4.0 * kPi) * sum;
}

GaugePotential random_potential(Sampler& s, const DeformationMatrix& th, int n, int radius = 2, int terms = 6) {
  return GaugePotential(s.hermitian(th, n, radius, terms), s.hermitian(th, n, radius, terms),
                        s.hermitian(th, n, radius, terms));
}

void expect_potentials_close(const GaugePotential& x, const GaugePotential& y, double tol) {
  for (int m = 1; m <= 3; ++m) EXPECT_LE(max_coeff_diff(x[m], y[m]), tol) << "component " << m;
}

// Degree-20 Taylor polynomial of exp(z h).
TorusElement exp_trunc(const TorusElement& h, Complex z) {
  TorusElement term = one(h.theta(), h.dim());
  TorusElement sum = term;
  for (int j = 1; j <= 20; ++j) {
    term = scale(z / static_cast<double>(j), mul(term, h));
    sum = sum + term;
  }
  return sum;
}

}  // namespace

TEST(Coupling, MustBeFinite) {
  EXPECT_THROW(Coupling(std::nan("")), ArgumentError);
  EXPECT_THROW(Coupling(std::numeric_limits<double>::infinity()), ArgumentError);
  EXPECT_EQ(Coupling(2.5).k, 2.5);
}

TEST(GaugePotential, RejectsNonHermitianComponents) {
  const TorusElement u1 = generator(kIrrational, 1, 1);
  const TorusElement zero(kIrrational, 1);
  EXPECT_THROW(GaugePotential(u1, zero, zero), PreconditionError);
  EXPECT_NO_THROW(GaugePotential(u1 + adjoint(u1), zero, zero));
  EXPECT_THROW(GaugePotential(zero, TorusElement(kIrrational, 2), zero), CompatibilityError);
}

TEST(CsAction, ZeroAndSingleAxisPotentialsVanish) {
  EXPECT_EQ(cs_action(GaugePotential::zero(kIrrational, 2), Coupling(1.0)), Complex(0.0));
  const TorusElement u1 = generator(kIrrational, 1, 1);
  const TorusElement zero(kIrrational, 1);
  EXPECT_EQ(cs_action(GaugePotential(zero, zero, u1 + adjoint(u1)), Coupling(3.0)), Complex(0.0));
}

TEST(CsAction, MatchesBruteForceExpansionOnCyclicPotential) {
  const DeformationMatrix th{};
  auto re = [&](int axis) {
    const TorusElement g = generator(th, 1, axis);
    return g + adjoint(g);
  };
  const GaugePotential a(re(2), re(3), re(1));
  const std::array<Series, 3> s{to_series(a[1]), to_series(a[2]), to_series(a[3])};
  EXPECT_LE(std::abs(cs_action(a, Coupling(1.7)) - brute_force_cs(s, 1.7)), 1e-13);
}

TEST(CsAction, MatchesBruteForceExpansionOnRandomPotentials) {
  Sampler s(77);
  const DeformationMatrix th{};
  for (int i = 0; i < 10; ++i) {
    // Radius 1 with many terms so the three components share modes.
    const GaugePotential a = random_potential(s, th, 1, 1, 12);
    const std::array<Series, 3> ser{to_series(a[1]), to_series(a[2]), to_series(a[3])};
    const Complex ref = brute_force_cs(ser, 2.0);
    EXPECT_LE(std::abs(cs_action(a, Coupling(2.0)) - ref), 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(CsAction, AdditiveInCoupling) {
  Sampler s(3);
  const GaugePotential a = random_potential(s, kIrrational, 2);
  const Complex sum = cs_action(a, Coupling(1.25)) + cs_action(a, Coupling(-0.5));
  const Complex whole = cs_action(a, Coupling(0.75));
  EXPECT_LE(std::abs(sum - whole), 4e-16 * std::abs(whole));
}

// Recorded behaviour: the quadratic part is real and, for N = 1 at theta = 0,
// the whole action is real; the cubic part is imaginary for hermitian A, so
// matrix-valued potentials give a complex action.
TEST(CsAction, RealityIsRecorded) {
  Sampler s(8);
  const GaugePotential abelian = random_potential(s, DeformationMatrix{}, 1, 1, 12);
  EXPECT_LE(std::abs(cs_action(abelian, Coupling(1.0)).imag()), 1e-14);
  const GaugePotential matrix = random_potential(s, DeformationMatrix{}, 2, 1, 12);
  EXPECT_GT(std::abs(cs_action(matrix, Coupling(1.0)).imag()), 1e-6);
}

TEST(Curvature, ZeroPotentialAndAntisymmetry) {
  const auto f0 = curvature(GaugePotential::zero(kIrrational, 2));
  for (const auto& row : f0)
    for (const auto& x : row) EXPECT_TRUE(x.empty());
  Sampler s(4);
  const auto f = curvature(random_potential(s, kIrrational, 2));
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      EXPECT_LE(max_coeff_diff(f[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)],
                               -f[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]),
                0.0);
}

TEST(Curvature, CommutativeCaseDropsCommutator) {
  Sampler s(9);
  const GaugePotential a = random_potential(s, DeformationMatrix{}, 1);
  const auto f = curvature(a);
  EXPECT_LE(max_coeff_diff(f[0][1], derive(1, a[2]) - derive(2, a[1])), 1e-14);
}

TEST(Curvature, IsGaugeCovariant) {
  Sampler s(10);
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    const GaugePotential a = random_potential(s, kIrrational, n);
    const TorusElement u = s.monomial_unitary(kIrrational, n, 2);
    const auto f = curvature(a);
    const auto fu = curvature(gauge_transform(a, u));
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 3; ++k)
        EXPECT_LE(max_coeff_diff(fu[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)],
                                 mul(mul(u, f[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]), adjoint(u))),
                  1e-12);
  }
}

TEST(GaugeTransform, IdentityAndPureGaugeExamples) {
  Sampler s(11);
  const GaugePotential a = random_potential(s, kIrrational, 2);
  expect_potentials_close(gauge_transform(a, one(kIrrational, 2)), a, 0.0);
  const GaugePotential g = gauge_transform(GaugePotential::zero(kIrrational, 1), generator(kIrrational, 1, 1));
  EXPECT_LE(max_coeff_diff(g[1], scale(Complex(0.0, -kTwoPi), one(kIrrational, 1))), 1e-15);
  EXPECT_TRUE(g[2].empty());
  EXPECT_TRUE(g[3].empty());
}

TEST(GaugeTransform, ComposesAsGroupAction) {
  Sampler s(12);
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    const GaugePotential a = random_potential(s, kIrrational, n);
    const TorusElement u = s.monomial_unitary(kIrrational, n, 2), v = s.monomial_unitary(kIrrational, n, 2);
    expect_potentials_close(gauge_transform(gauge_transform(a, u), v), gauge_transform(a, mul(v, u)), 1e-12);
  }
}

TEST(GaugeTransform, RejectsNonUnitary) {
  const TorusElement u = 1.01 * generator(kIrrational, 1, 1);
  try {
    gauge_transform(GaugePotential::zero(kIrrational, 1), u);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NEAR(e.defect(), 1.01 * 1.01 - 1.0, 1e-12);
  }
}

TEST(Winding, MonomialsAndProductsVanish) {
  const DeformationMatrix th{0.3, -0.17, 1.0 / std::numbers::sqrt2};
  EXPECT_EQ(winding(one(th, 1)), Complex(0.0));
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) EXPECT_LE(std::abs(winding(mono(th, 1, {a, b, c}))), 1e-14);
  Sampler s(13);
  const TorusElement u = s.monomial_unitary(th, 2, 3), v = s.monomial_unitary(th, 2, 3);
  EXPECT_LE(std::abs(winding(mul(u, v))), 1e-14);
}

TEST(Winding, RejectsNonUnitary) {
  EXPECT_THROW(winding(2.0 * one(kIrrational, 1)), PreconditionError);
}

class PowersRieffelWinding : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    PRConfig cfg;
    cfg.trunc = 32;
    cfg.samples = 512;
    e_ = new TorusElement(build_projection(cfg));
    u_ = new TorusElement(build_unitary(*e_, 1e-2));
  }
  static void TearDownTestSuite() {
    delete e_;
    delete u_;
  }
  static inline TorusElement* e_ = nullptr;
  static inline TorusElement* u_ = nullptr;
};

TEST_F(PowersRieffelWinding, OrientationReversalFlipsSign) {
  const Complex w = winding(*u_, 0.1);
  EXPECT_LE(std::abs(winding(adjoint(*u_), 0.1) + w), 1e-10);
}

TEST_F(PowersRieffelWinding, ChernNumberInvariantUnderMonomialConjugation) {
  const Complex c = chern2(*e_);
  for (MultiIndex p : {MultiIndex{1, 0, 0}, MultiIndex{0, 1, 0}, MultiIndex{2, -1, 1}}) {
    const TorusElement m = mono(e_->theta(), 1, p);
    EXPECT_LE(std::abs(chern2(mul(mul(m, *e_), adjoint(m))) - c), 1e-10);
  }
}

TEST_F(PowersRieffelWinding, GammaIsCsActionOfPureGauge) {
  // S_CS[u d(u*)] = S_CS[0] + Gamma[u].
  const GaugePotential pure = gauge_transform(GaugePotential::zero(u_->theta(), 1), *u_, 0.1);
  const Complex s = cs_action(pure, Coupling(1.0));
  const Complex g = gamma(*u_, Coupling(1.0), 0.1);
  // Exact for unitary u; the truncated U misses unitarity by defect_unitary(U).
  EXPECT_LE(std::abs(s - g), defect_unitary(*u_) * std::abs(g));
  EXPECT_GT(std::abs(g), 1.0);
}

// (k / 12 pi) sum eps tr(d_l u d_m u* d_n u) carries one net power of u and
// its trace vanishes on U = e U3 + (1 - e) U3* by U3-degree counting, so it
// cannot be the shift of the action computed above.
TEST_F(PowersRieffelWinding, OddDegreeGammaFormVanishes) {
  const TorusElement us = adjoint(*u_);
  Complex sum{};
  for (const auto& t : kEpsilonTerms) {
    sum += t.sign * trace_product(mul(derive(t.lambda, *u_), derive(t.mu, us)), derive(t.nu, *u_));
  }
  EXPECT_LE(std::abs(sum / (12.0 * kPi)), 1e-12);
}

// u_t = u exp(2 i pi t h) stays unitary to within the Taylor remainder, so
// W[u_t] must not move along the path.
TEST(Winding, InvariantAlongSmoothFamily) {
  Sampler s(14);
  for (int n = 1; n <= 2; ++n) {
    const TorusElement u = s.monomial_unitary(kIrrational, n, 2);
    const TorusElement h = scale(0.05, s.hermitian(kIrrational, n, 1, 3));
    const Complex w0 = winding(u);
    for (double t : {0.25, 0.5, 1.0}) {
      const TorusElement ut = mul(u, exp_trunc(h, Complex(0.0, kTwoPi * t)));
      EXPECT_LE(std::abs(winding(ut, 1e-12) - w0), 1e-8) << "n=" << n << " t=" << t;
    }
  }
}

TEST(GaugeVariation, IdentityHoldsForMonomialGauges) {
  Sampler s(15);
  const TorusElement u1u3 = mul(generator(kIrrational, 2, 1), generator(kIrrational, 2, 3));
  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 2;
    const GaugePotential a = random_potential(s, kIrrational, n);
    const TorusElement u = n == 2 && i < 2 ? u1u3 : s.monomial_unitary(kIrrational, n, 2);
    const GaugePotential au = gauge_transform(a, u);
    EXPECT_LE(gauge_variation_defect(a, u, Coupling(1.3)), 1e-10 * gauge_defect_scale(a, au, Coupling(1.3)));
  }
  const GaugePotential a = random_potential(s, kIrrational, 1);
  EXPECT_EQ(gauge_variation_defect(a, one(kIrrational, 1), Coupling(1.0)), 0.0);
  EXPECT_LE(gauge_variation_defect(GaugePotential::zero(kIrrational, 1), mono(kIrrational, 1, {1, 2, -1}), Coupling(1.0)),
            1e-14);
}

TEST(Chern2, TrivialProjections) {
  EXPECT_EQ(chern2(TorusElement(kIrrational, 1)), Complex(0.0));
  EXPECT_EQ(chern2(one(kIrrational, 1)), Complex(0.0));
}
