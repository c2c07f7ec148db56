#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nctorus/invariants.hpp"

using namespace nctorus;

namespace {

const DeformationMatrix kGeneric{0.3, -0.17, 1.0 / std::numbers::sqrt2};

TorusElement u(int axis, const DeformationMatrix& th = kGeneric, int n = 1) { return generator(th, n, axis); }

void expect_close(const TorusElement& x, const TorusElement& y, double tol) {
  EXPECT_LE(max_coeff_diff(x, y), tol);
}

}  // namespace

TEST(Deformation, FromMatrixRequiresAntisymmetry) {
  const auto th = DeformationMatrix::from_matrix({{{0, 0.1, 0.2}, {-0.1, 0, 0.3}, {-0.2, -0.3, 0}}});
  EXPECT_EQ(th, DeformationMatrix(0.1, 0.2, 0.3));
  EXPECT_DOUBLE_EQ(th(2, 1), -0.3);
  EXPECT_THROW(DeformationMatrix::from_matrix({{{0, 0.1, 0}, {0.1, 0, 0}, {0, 0, 0}}}), ArgumentError);
  EXPECT_THROW(DeformationMatrix::from_matrix({{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}}), ArgumentError);
}

TEST(Deformation, UnitPhaseReducesLargeTurns) {
  const Complex z = unit_phase(1e9L + 0.25L);
  EXPECT_NEAR(z.real(), 0.0, 1e-12);
  EXPECT_NEAR(z.imag(), 1.0, 1e-12);
}

TEST(Algebra, GeneratorsSatisfyCommutationRelations) {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const Complex w = unit_phase(kGeneric(i - 1, j - 1));
      expect_close(mul(u(i), u(j)), scale(w, mul(u(j), u(i))), 1e-15);
    }
}

TEST(Algebra, MonomialProductUsesCanonicalPhase) {
  const MultiIndex p{2, -1, 3}, q{-1, 4, 2};
  const TorusElement prod = mul(TorusElement::monomial(kGeneric, 1, p), TorusElement::monomial(kGeneric, 1, q));
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod.mode(0), p + q);
  EXPECT_LE(std::abs(prod.at(p + q) - kGeneric.product_phase(p, q)), 1e-15);
  // Same element built from generators one at a time.
  TorusElement byhand = one(kGeneric, 1);
  for (int a = 0; a < 3; ++a)
    for (int s = 0; s < std::abs(p[a]); ++s)
      byhand = mul(byhand, p[a] > 0 ? u(a + 1) : adjoint(u(a + 1)));
  expect_close(byhand, TorusElement::monomial(kGeneric, 1, p), 1e-14);
}

TEST(Algebra, AdjointOfMonomialIsInverse) {
  const TorusElement m = TorusElement::monomial(kGeneric, 1, {3, -2, 1});
  expect_close(mul(m, adjoint(m)), one(kGeneric, 1), 1e-15);
  expect_close(mul(adjoint(m), m), one(kGeneric, 1), 1e-15);
  EXPECT_TRUE(is_unitary(mul(mul(u(1), u(2)), u(3)), 1e-12));
}

TEST(Algebra, HermitianAndTrace) {
  EXPECT_TRUE(is_hermitian(u(1) + adjoint(u(1)), 1e-12));
  EXPECT_FALSE(is_hermitian(u(1), 1e-12));
  EXPECT_EQ(trace(one(kGeneric, 3)), Complex(3.0));
  EXPECT_EQ(trace(u(2)), Complex(0.0));
  EXPECT_EQ(trace(2.5 * one(kGeneric, 1) + u(1)), Complex(2.5));
}

TEST(Algebra, DerivationsActDiagonally) {
  const TorusElement m = TorusElement::monomial(kGeneric, 1, {2, -1, 3});
  for (int i = 1; i <= 3; ++i) {
    const Complex expect(0.0, kTwoPi * m.mode(0)[static_cast<std::size_t>(i - 1)]);
    EXPECT_EQ(derive(i, m).at(m.mode(0)), expect);
  }
  EXPECT_TRUE(derive(1, one(kGeneric, 1)).empty());
  EXPECT_THROW(derive(0, m), ArgumentError);
  EXPECT_THROW(derive(4, m), ArgumentError);
}

TEST(Algebra, TraceProductMatchesTraceOfProduct) {
  Sampler s(11);
  for (int n = 1; n <= 2; ++n) {
    const TorusElement a = s.element(kGeneric, n, 3), b = s.element(kGeneric, n, 3);
    EXPECT_LE(std::abs(trace_product(a, b) - trace(mul(a, b))), 1e-13);
  }
}

TEST(Algebra, MismatchedOperandsAreRejected) {
  EXPECT_THROW(mul(u(1), u(1, DeformationMatrix{})), CompatibilityError);
  EXPECT_THROW(add(u(1), u(1, kGeneric, 2)), CompatibilityError);
  EXPECT_THROW(trace_product(u(1), u(1, kGeneric, 2)), CompatibilityError);
  EXPECT_THROW(TorusElement(kGeneric, 0), ArgumentError);
}

TEST(Element, AssembleValidatesAndPrunes) {
  EXPECT_THROW(TorusElement::assemble(kGeneric, 1, {{1, 0, 0}, {0, 0, 0}}, {1.0, 1.0}), ArgumentError);
  EXPECT_THROW(TorusElement::assemble(kGeneric, 1, {{0, 0, 0}}, {1.0, 1.0}), ArgumentError);
  const TorusElement e =
      TorusElement::assemble(kGeneric, 1, {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}}, {1.0, 1e-16, 0.0});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.mode(0), MultiIndex(0, 0, 0));
  // Explicit zero scale keeps every nonzero block.
  EXPECT_EQ(TorusElement::assemble(kGeneric, 1, {{0, 0, 0}, {0, 0, 1}}, {1.0, 1e-16}, 0.0).size(), 2u);
}

TEST(Element, CancellationLeavesEmptySupport) {
  const TorusElement a = u(1) + u(2);
  EXPECT_TRUE((a - a).empty());
  EXPECT_EQ(l1(a - a), 0.0);
}

TEST(Element, NormsUseOperatorNorm) {
  ElementBuilder b(kGeneric, 2);
  b.add({0, 0, 0}, 0, 0, 3.0).add({0, 0, 0}, 1, 1, -1.0).add({1, 0, 0}, 0, 1, 2.0);
  const Norms nm = norms(b.build());
  EXPECT_NEAR(nm.l1, 5.0, 1e-12);
  EXPECT_NEAR(nm.linf, 3.0, 1e-12);
}

TEST(Element, TruncateDropsOuterModes) {
  const TorusElement a = u(1) + TorusElement::monomial(kGeneric, 1, {0, 5, 0}) + one(kGeneric, 1);
  const TorusElement t = truncate(a, 2);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.radius(), 1);
}

// Direct double loop over stored modes.
TorusElement naive_mul(const TorusElement& a, const TorusElement& b) {
  const int n = a.dim();
  ElementBuilder out(a.theta(), n);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Complex ph = a.theta().product_phase(a.mode(i), b.mode(j));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          Complex z{};
          for (int k = 0; k < n; ++k) z += a.block(i)[r * n + k] * b.block(j)[k * n + c];
          out.add(a.mode(i) + b.mode(j), r, c, ph * z);
        }
    }
  return out.build(0.0);
}

TEST(Kernel, DenseAndSparsePathsMatchDirectSum) {
  Sampler s(5);
  const TorusElement a = s.element(kGeneric, 2, 3, 20), b = s.element(kGeneric, 2, 3, 20);
  EXPECT_LE(max_coeff_diff(mul(a, b), naive_mul(a, b)), 1e-13);
  // A far-away mode blows up the bounding box and forces the sparse path.
  const TorusElement spread = a + TorusElement::monomial(kGeneric, 2, {90, -90, 90});
  EXPECT_LE(max_coeff_diff(mul(spread, b), naive_mul(spread, b)), 1e-13);
}

TEST(Kernel, ThreadCountDoesNotChangeBits) {
  Sampler s(6);
  const TorusElement a = s.element(kGeneric, 2, 6, 40), b = s.element(kGeneric, 2, 6, 40);
  const TorusElement one_thread = mul(a, b, ProductOptions{std::nullopt, 1});
  const TorusElement three = mul(a, b, ProductOptions{std::nullopt, 3});
  EXPECT_TRUE(one_thread == three);
}

TEST(Kernel, RadiusOptionTruncatesOutput) {
  const TorusElement a = u(1) + one(kGeneric, 1);
  const TorusElement sq = mul(a, a, ProductOptions{1, 0});
  EXPECT_EQ(sq.radius(), 1);
  EXPECT_EQ(sq.size(), 2u);
}

TEST(Sampler, IsDeterministic) {
  Sampler a(42), b(42);
  EXPECT_TRUE(a.element(kGeneric, 2, 3) == b.element(kGeneric, 2, 3));
  EXPECT_TRUE(a.monomial_unitary(kGeneric, 2, 2) == b.monomial_unitary(kGeneric, 2, 2));
}

TEST(Oracle, ClockAndShiftCommutationRelation) {
  const ClockShiftRep rep(17, 5);
  const DenseMatrix c = rep.clock(), s = rep.shift();
  const Complex w = unit_phase(5.0L / 17.0L);
  EXPECT_LE((c * s - w * s * c).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Oracle, RejectsBadParameters) {
  EXPECT_THROW(ClockShiftRep(17, 0), ArgumentError);
  EXPECT_THROW(ClockShiftRep(12, 4), ArgumentError);
  const ClockShiftRep rep(17, 3);
  EXPECT_THROW(represent(u(1), rep), PreconditionError);
  EXPECT_THROW(oracle_trace(TorusElement::monomial(rep.theta(), 1, {17, 0, 0}), rep), PreconditionError);
}

TEST(Oracle, TraceSeesOnlyTheConstantMode) {
  const ClockShiftRep rep(17, 3);
  const TorusElement a = 2.0 * one(rep.theta(), 1) + TorusElement::monomial(rep.theta(), 1, {0, 0, 4}) +
                         TorusElement::monomial(rep.theta(), 1, {3, 1, 0});
  EXPECT_LE(std::abs(oracle_trace(a, rep) - 2.0), 1e-13);
}

TEST(Invariants, CyclicCocycleVanishesOnConstants) {
  const TorusElement c = one(kGeneric, 1);
  EXPECT_EQ(cyclic_cocycle3(c, c, u(1), u(2)), Complex(0.0));
}

class Suites : public ::testing::Test {
 protected:
  SuiteOptions opt;
};

#define SUITE_TEST(Name, fn)                                                                          \
  TEST_F(Suites, Name) {                                                                              \
    const SuiteResult r = fn(opt);                                                                    \
    EXPECT_TRUE(r.passed) << r.name << " worst " << r.worst << " > " << r.tolerance;                  \
  }

SUITE_TEST(StarLaws, star_laws_suite)
SUITE_TEST(Traciality, traciality_suite)
SUITE_TEST(Associativity, associativity_suite)
SUITE_TEST(Leibniz, leibniz_suite)
SUITE_TEST(DerivationStar, derivation_star_suite)
SUITE_TEST(TraceKillsDerivations, trace_derivation_suite)
SUITE_TEST(Closedness, closedness_suite)
SUITE_TEST(Cyclicity, cyclicity_suite)
SUITE_TEST(OracleEquivalence, oracle_suite)

TEST_F(Suites, ErrorPaths) { EXPECT_TRUE(error_paths_suite().passed); }
