#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nctorus/spectral.hpp"

using namespace nctorus;

namespace {

constexpr double kPi = std::numbers::pi;

// Plain triple loop over the cube |k_i| <= r.
double lattice_sum(double t, int r) {
  double s = 0.0;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      for (int c = -r; c <= r; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        s += std::exp(-4.0 * kPi * kPi * t * (a * a + b * b + c * c));
      }
  return s;
}

int levi_civita(int l, int m, int n) {
  if (l == m || m == n || l == n) return 0;
  return (l - m) * (m - n) * (n - l) / 2;
}

}  // namespace

TEST(HeatTrace, MatchesDirectLatticeSum) {
  for (double t : {0.1, 0.02, 0.005}) {
    const double ref = lattice_sum(t, heat_cutoff(t) + 2);
    EXPECT_LE(std::abs(heat_trace(t) - ref), 1e-13 * ref) << "t=" << t;
  }
}

TEST(HeatTrace, CutoffIsConverged) {
  const double t = 1e-3;
  const int r = heat_cutoff(t);
  EXPECT_EQ(heat_trace(t, r), heat_trace(t, r + 10));
  EXPECT_GT(heat_trace(1.0), 0.0);
  EXPECT_THROW(heat_trace(0.0), ArgumentError);
  EXPECT_THROW(heat_trace(1e-3, -1), ArgumentError);
}

// The full theta sum obeys theta(t)^3 = (4 pi t)^{-3/2} (1 + O(e^{-1/4t})), so
// with the zero mode removed heat_trace(t) (4 pi t)^{3/2} = 1 - (4 pi t)^{3/2}.
TEST(HeatTrace, SmallTimeAsymptotics) {
  for (double t : {1e-3, 1e-4}) {
    const double w = std::pow(4.0 * kPi * t, 1.5);
    EXPECT_NEAR(heat_trace(t) * w, 1.0 - w, 1e-12) << "t=" << t;
  }
  // The zero-mode offset alone is 1.41e-3 at t = 1e-3; at t = 1e-4 the
  // normalized trace is within 1e-4 of its limit.
  EXPECT_NEAR(heat_trace(1e-4) * std::pow(4.0 * kPi * 1e-4, 1.5), 1.0, 1e-4);
}

TEST(Residue, DefaultGridWithinOnePercent) {
  const ResidueFit fit = fit_residue(default_residue_grid());
  EXPECT_NEAR(kZetaResidue, 0.02533029591, 1e-11);
  EXPECT_LE(std::abs(fit.residue - kZetaResidue) / kZetaResidue, 1e-2);
  EXPECT_NEAR(fit.free_slope, -1.5, 1e-2);
  EXPECT_DOUBLE_EQ(residue_estimate(), fit.residue);
}

TEST(Residue, DisjointGridsAgree) {
  const std::vector<double> a{1e-3, 5e-4, 2e-4, 1e-4};
  const std::vector<double> b{2e-3, 1e-3 * 0.9, 4e-4, 1.5e-4};
  const double ra = residue_estimate(a), rb = residue_estimate(b);
  EXPECT_LE(std::abs(ra - rb) / ra, 5e-3);
}

TEST(Residue, DoubledEigenvaluesScaleByTwoToMinusThreeHalves) {
  const double r1 = residue_estimate(default_residue_grid(), 1.0);
  const double r2 = residue_estimate(default_residue_grid(), 2.0);
  EXPECT_NEAR(r2 / r1, std::pow(2.0, -1.5), 1e-3);
}

TEST(Residue, RejectsBadGrids) {
  EXPECT_THROW(fit_residue(std::vector<double>{1e-3}), ArgumentError);
  EXPECT_THROW(fit_residue(std::vector<double>{1e-3, 5e-4}), ArgumentError);
  EXPECT_THROW(fit_residue(std::vector<double>{0.5, 0.01}), ArgumentError);
  EXPECT_THROW(fit_residue(std::vector<double>{-1e-3, 1e-2}), ArgumentError);
}

TEST(Pauli, SingleTracesVanish) {
  for (int l = 1; l <= 3; ++l) EXPECT_EQ(pauli_trace1(l), std::complex<double>(0.0));
  EXPECT_THROW(pauli_trace1(0), ArgumentError);
}

TEST(Pauli, TripleTraceIsTwoIEpsilon) {
  int checked = 0;
  for (int l = 1; l <= 3; ++l)
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        const auto t = pauli_trace3(l, m, n);
        EXPECT_EQ(t.real(), 0.0);
        EXPECT_EQ(static_cast<int>(t.imag()), 2 * levi_civita(l, m, n)) << l << m << n;
        EXPECT_EQ(t.imag(), std::round(t.imag()));
        ++checked;
      }
  EXPECT_EQ(checked, 27);
}
