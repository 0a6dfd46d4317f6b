#include <gtest/gtest.h>

#include "support.hpp"
#include "realbundles/orientability.hpp"

using namespace realbundles;

TEST(SymmetricProducts, TwoCircleEllipticCurve) {
  const KleinType t = KleinType::make(1, 2, 0);
  for (long long d = 2; d <= 9; ++d) {
    const auto rep = symmetric_power_report(t, d);
    ASSERT_EQ(rep.size(), 2u);
    EXPECT_FALSE(rep[0].orientable) << "d=" << d;
    EXPECT_EQ(rep[1].orientable, d % 2 == 0) << "d=" << d;
    EXPECT_EQ(rep[0].fiber_rank, d);
  }
}

TEST(SymmetricProducts, OddFiberRankNeverOrientable) {
  for (const auto& t : klein_types(1, 4))
    for (long long d = 2 * t.g; d <= 2 * t.g + 4; ++d) {
      if (!stability_bound_check(symmetric_power_setup(t, d))) continue;
      for (const auto& row : symmetric_power_report(t, d))
        if (row.fiber_rank % 2 != 0) EXPECT_FALSE(row.orientable) << t.str() << " d=" << d;
    }
}

TEST(SymmetricProducts, FiberRankIsDegreeMinusGenusPlusOne) {
  for (const auto& t : klein_types(1, 4)) {
    const long long d = 2 * t.g + 1;
    for (const auto& row : symmetric_power_report(t, d)) EXPECT_EQ(row.fiber_rank, d - t.g + 1) << t.str();
  }
}

TEST(StableRange, Bounds) {
  QuotSetup s;
  s.type = KleinType::make(2, 1, 1);
  s.r0 = 2;
  s.e0 = 1;
  s.mu_max = Rational(1);
  s.d = 3;
  const StabilityBounds b = stability_bounds(s);
  // max(-1/2 + 2, 1 * 1 - 1 + 2) = 2 and -1/2 + 1 + 1/2 = 1
  EXPECT_EQ(b.bound_generic, Rational(2));
  EXPECT_EQ(b.bound_smooth, Rational(1));
  EXPECT_TRUE(b.satisfied);
  s.d = 2;
  EXPECT_FALSE(stability_bound_check(s));
  EXPECT_THROW(orientability_report(s, pic_torus(s.type)), InvalidInput);
  s.r0 = 0;
  EXPECT_THROW(stability_bounds(s), InvalidInput);
}

TEST(DeterminantClass, SplittingGivesTheSameClass) {
  std::mt19937_64 rng(3);
  for (const auto& t : klein_types(1, 4)) {
    const PicTorusData p = pic_torus(t);
    const std::size_t k = p.lattice.component_group().rank();
    for (int trial = 0; trial < 4; ++trial) {
      QuotSetup s;
      s.type = t;
      s.r0 = 2 + static_cast<int>(rng() % 3);
      s.p0_circle = rng() % static_cast<std::size_t>(t.r);
      Z2Vector v(k), w(k), total(k);
      for (std::size_t i = 0; i < k; ++i) {
        v[i] = rng() & 1;
        w[i] = rng() & 1;
        total[i] = v[i] ^ w[i];
      }
      s.det_component = total;
      EXPECT_EQ(det_ind_class(s, p), det_ind_class_split(s, p, v, w)) << t.str();
    }
  }
}

TEST(DeterminantClass, HasCupFormTimesRank) {
  const KleinType t = KleinType::make(2, 3, 0);
  const PicTorusData p = pic_torus(t);
  QuotSetup s;
  s.type = t;
  s.r0 = 3;
  EXPECT_EQ(det_ind_class(s, p).form(), Integer(3) * p.cup_form);
  s.r0 = 1;
  EXPECT_THROW(det_ind_class_split(s, p, {0, 0}, {0, 0}), InvalidInput);
}

TEST(Report, OrientableMeansEvenRankAndTrivialW1) {
  std::mt19937_64 rng(5);
  for (const auto& t : klein_types(1, 4)) {
    QuotSetup s;
    s.type = t;
    s.r0 = 1 + static_cast<int>(rng() % 3);
    s.e0 = static_cast<long long>(rng() % 5) - 2;
    s.mu_max = Rational(s.e0, s.r0) + static_cast<int>(rng() % 2);
    s.d = 3 * t.g + 4;
    const PicTorusData p = pic_torus(t);
    for (const auto& row : orientability_report(s, p)) {
      const bool w1_zero = std::all_of(row.w1.begin(), row.w1.end(), [](auto b) { return b == 0; });
      EXPECT_EQ(row.orientable, row.fiber_rank % 2 == 0 && w1_zero);
      EXPECT_EQ(row.fiber_rank, s.e0 + s.r0 * s.d + s.r0 * (1 - t.g));
      // The circle duals and norms span the invariants, so w1 vanishes iff
      // it vanishes on every circle dual and every norm.
      bool on_circles_zero = std::all_of(row.w1_on_circles.begin(), row.w1_on_circles.end(), [](int b) { return b == 0; });
      const SWFunction f = sw_function(det_ind_class(s, p));
      for (std::size_t i = 0; i < p.lattice.dim(); ++i) {
        const IntegerVector e = unit_vector(p.lattice.dim(), i);
        on_circles_zero = on_circles_zero && f.value(row.component, add(e, p.lattice.apply(e))) == 0;
      }
      EXPECT_EQ(w1_zero, on_circles_zero) << t.str();
    }
  }
}
