#include <gtest/gtest.h>

#include "support.hpp"
#include "realbundles/klein_surface.hpp"

using namespace realbundles;

TEST(KleinTypes, MatchTheClassicalList) {
  // Separating curves: r = g + 1, g - 1, ...; non-separating: 1 <= r <= g.
  for (int g = 0; g <= 8; ++g) {
    std::vector<KleinType> expected;
    for (int r = 1; r <= g + 1; ++r) {
      if ((g + 1 - r) % 2 == 0) expected.push_back({g, r, 0});
      if (r <= g) expected.push_back({g, r, 1});
    }
    EXPECT_EQ(klein_types(g, g), expected) << "g=" << g;
  }
  EXPECT_THROW(KleinType::make(1, 1, 0), InvalidInput);
  EXPECT_THROW(KleinType::make(2, 0, 1), InvalidInput);
  EXPECT_THROW(KleinType::make(2, 3, 1), InvalidInput);
  EXPECT_THROW(KleinType::make(2, 1, 2), InvalidInput);
}

TEST(SurfaceBasis, InvolutionIsAntiSymplectic) {
  for (const auto& t : klein_types(0, 6)) {
    const SurfaceBasis b = build_surface_basis(t);
    const std::size_t n = 2 * static_cast<std::size_t>(t.g);
    ASSERT_EQ(b.iota * b.iota, IntegerMatrix::identity(n)) << t.str();
    EXPECT_EQ(b.iota.transpose() * b.J * b.iota, Integer(-1) * b.J) << t.str();
    // Anti-symplectic involutions split H_1 into halves.
    EXPECT_EQ(kernel_basis(b.iota - IntegerMatrix::identity(n)).cols(), static_cast<std::size_t>(t.g));
  }
}

TEST(SurfaceBasis, CirclesAreFixedDisjointAndRelatedAsExpected) {
  for (const auto& t : klein_types(1, 6)) {
    const SurfaceBasis b = build_surface_basis(t);
    ASSERT_EQ(b.circles.size(), static_cast<std::size_t>(t.r));
    for (const auto& c : b.circles) EXPECT_EQ(b.iota * c, c) << t.str();
    for (const auto& x : b.circles)
      for (const auto& y : b.circles) EXPECT_EQ(bilinear(b.J, x, y), 0) << t.str();
    const IntegerMatrix C = IntegerMatrix::from_columns(b.circles, b.iota.rows());
    const std::size_t rk = oracle::rank_rational(support::plain(C));
    if (t.a == 0) {
      // The circles bound the two halves: one relation, the sum.
      EXPECT_EQ(rk, static_cast<std::size_t>(t.r - 1)) << t.str();
      IntegerVector sum(C.rows());
      for (const auto& c : b.circles) sum = add(sum, c);
      EXPECT_TRUE(is_zero(sum)) << t.str();
    } else {
      EXPECT_EQ(rk, static_cast<std::size_t>(t.r)) << t.str();
    }
  }
}

TEST(PicTorus, ComponentCountIsTwoToTheRMinusOne) {
  for (const auto& t : klein_types(0, 6)) {
    const PicTorusData p = pic_torus(t);
    const auto counts = oracle::involution_counts(support::plain(p.lattice.tau()));
    EXPECT_EQ(std::size_t{1} << counts.component_rank, std::size_t{1} << (t.r - 1)) << t.str();
    EXPECT_EQ(p.component_count(), std::size_t{1} << (t.r - 1)) << t.str();
  }
}

TEST(PicTorus, TwoCircleEllipticCurve) {
  const PicTorusData p = pic_torus(KleinType::make(1, 2, 0));
  EXPECT_EQ(p.lattice.tau(), (IntegerMatrix{{-1, 0}, {0, 1}}));
  ASSERT_EQ(p.circle_duals.size(), 2u);
  EXPECT_EQ(p.circle_duals[0], (IntegerVector{0, 1}));
  EXPECT_EQ(p.cap_fundamental(p.poincare_dual(IntegerVector{3, -2})), (IntegerVector{3, -2}));
  EXPECT_EQ(p.component_count(), 2u);
}

TEST(PicTorus, DualityRoundTrip) {
  std::mt19937_64 rng(2);
  for (const auto& t : klein_types(1, 4)) {
    const PicTorusData p = pic_torus(t);
    IntegerVector h(p.lattice.dim());
    for (auto& x : h) x = static_cast<int>(rng() % 9) - 4;
    EXPECT_EQ(p.cap_fundamental(p.poincare_dual(h)), h);
    // Invariant homology classes have invariant duals.
    for (const auto& d : p.circle_duals) EXPECT_TRUE(p.lattice.is_fixed(d)) << t.str();
  }
}

TEST(CircleSpan, HoldsForAllTypes) {
  for (const auto& t : klein_types(1, 6)) {
    const CircleSpanReport r = verify_circle_span(t);
    EXPECT_TRUE(r.spans_invariants) << t.str();
    EXPECT_TRUE(r.relations_ok) << t.str();
    EXPECT_TRUE(r.intersection_ok) << t.str();
    EXPECT_TRUE(r.parity_ok) << t.str();
  }
}

TEST(CurveClasses, DegreeParityIsEnforced) {
  const KleinType t = KleinType::make(2, 3, 0);
  EXPECT_NO_THROW(validate_curve_class(t, 3, {1, 1, 1}));
  EXPECT_NO_THROW(validate_curve_class(t, -2, {1, 1, 0}));
  EXPECT_THROW(validate_curve_class(t, 2, {1, 0, 0}), InvalidInput);
  EXPECT_THROW(validate_curve_class(t, 1, {1, 0}), InvalidInput);
  EXPECT_THROW(validate_curve_class(t, 1, {1, 0, 2}), InvalidInput);
}
