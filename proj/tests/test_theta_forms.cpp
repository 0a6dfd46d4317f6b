#include <gtest/gtest.h>

#include "support.hpp"
#include "realbundles/theta_forms.hpp"

using namespace realbundles;

namespace {

oracle::Bits bits(const Z2Vector& z) { return {z.begin(), z.end()}; }

oracle::Bits reduced(const IntegerVector& v) {
  oracle::Bits b;
  for (const auto& x : v) b.push_back(mod2(x));
  return b;
}

// Invariance of q under iota, evaluated with the reference form.
bool invariant(const QuadraticRefinement& q, const SurfaceBasis& b) {
  const std::size_t n = q.values.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    IntegerVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    const oracle::Bits values = bits(q.values);
    if (oracle::q_value(q.g, values, reduced(b.iota * x)) != oracle::q_value(q.g, values, reduced(x))) return false;
  }
  return true;
}

}  // namespace

TEST(Refinements, EvaluationAgreesWithReference) {
  std::mt19937_64 rng(1);
  for (int g = 1; g <= 4; ++g)
    for (int t = 0; t < 50; ++t) {
      const QuadraticRefinement q = QuadraticRefinement::from_mask(g, rng());
      Z2Vector x(2 * static_cast<std::size_t>(g));
      for (auto& b : x) b = rng() & 1;
      EXPECT_EQ(eval_q(q, x), oracle::q_value(g, bits(q.values), bits(x)));
    }
}

TEST(Refinements, ArfIsTheMajorityValue) {
  for (int g = 1; g <= 3; ++g)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * g)); ++mask) {
      const QuadraticRefinement q = QuadraticRefinement::from_mask(g, mask);
      EXPECT_EQ(arf(q), oracle::arf_by_majority(g, bits(q.values))) << "g=" << g << " mask=" << mask;
    }
}

TEST(Refinements, EvenAndOddCounts) {
  for (int g = 1; g <= 4; ++g) {
    std::size_t odd = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * g)); ++mask)
      odd += arf(QuadraticRefinement::from_mask(g, mask));
    EXPECT_EQ(odd, (std::size_t{1} << (g - 1)) * ((std::size_t{1} << g) - 1));
  }
}

TEST(RealRefinements, CountAndReferenceInvariance) {
  for (const auto& t : klein_types(1, 4)) {
    const SurfaceBasis b = build_surface_basis(t);
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * t.g)); ++mask) {
      const QuadraticRefinement q = QuadraticRefinement::from_mask(t.g, mask);
      const bool real = is_real_refinement(q, b);
      ASSERT_EQ(real, invariant(q, b)) << t.str() << " mask=" << mask;
      count += real;
    }
    EXPECT_EQ(count, std::size_t{1} << (t.g + t.r - 1)) << t.str();
  }
}

TEST(RealRefinements, BoundaryVectorsHaveTheThetaParity) {
  for (const auto& t : klein_types(1, 4)) {
    const BoundaryCensus c = realizable_boundary_data(t);
    EXPECT_TRUE(c.real_satisfy_circle_parity) << t.str();
    EXPECT_EQ(c.real.size(), std::size_t{1} << (t.r - 1)) << t.str();
    for (const auto& w : boundary_to_w(c.real)) {
      int sum = 0;
      for (auto x : w) sum ^= x;
      EXPECT_EQ(sum, (t.g - 1) & 1) << t.str();
    }
    for (const auto& [bv, n] : c.real) EXPECT_EQ(n, theta_chars_per_component(t.g)) << t.str();
  }
}

TEST(AllRefinements, SeparatingCurvesSeeOnlyTheParitySet) {
  for (const auto& t : klein_types(1, 4)) {
    if (t.a != 0) continue;
    const BoundaryCensus c = realizable_boundary_data(t);
    EXPECT_TRUE(c.all_satisfy_circle_parity) << t.str();
    EXPECT_EQ(c.all.size(), std::size_t{1} << (t.r - 1)) << t.str();
    for (const auto& [bv, n] : c.all) EXPECT_EQ(n, std::size_t{1} << (2 * t.g - t.r + 1)) << t.str();
  }
}

TEST(AllRefinements, NonSeparatingCurvesSeeEveryBoundaryVector) {
  // The circles are independent mod 2 here, so an arbitrary refinement can
  // take any values on them; only the Real ones obey the parity rule.
  for (const auto& t : klein_types(1, 4)) {
    if (t.a != 1) continue;
    const BoundaryCensus c = realizable_boundary_data(t);
    EXPECT_FALSE(c.all_satisfy_circle_parity) << t.str();
    EXPECT_EQ(c.all.size(), std::size_t{1} << t.r) << t.str();
    for (const auto& [bv, n] : c.all) EXPECT_EQ(n, std::size_t{1} << (2 * t.g - t.r)) << t.str();
  }
}

TEST(ThetaClasses, CircleRuleAgreesWithTheSignCharacter) {
  for (const auto& t : klein_types(1, 3)) {
    const PicTorusData p = pic_torus(t);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * t.g)); ++mask) {
      const QuadraticRefinement q = QuadraticRefinement::from_mask(t.g, mask);
      if (!is_real_refinement(q, p.surface)) continue;
      const UCharacter chi = chi_from_q(p, q);
      ASSERT_TRUE(is_real_ucharacter(p.lattice, chi)) << t.str();
      const RealLineBundleClass c = theta_class_from_q(p, q);
      EXPECT_EQ(c, class_from_real_character(p.lattice, chi)) << t.str() << " mask=" << mask;
      for (std::size_t i = 0; i < p.circle_duals.size(); ++i)
        EXPECT_EQ(c.w0_at(p.circle_duals[i]), eval_q(q, p.surface.circles[i]));
    }
  }
}

TEST(ThetaClasses, NonRealFormsCanContradictTheCupForm) {
  std::size_t rejected = 0;
  for (const auto& t : klein_types(1, 3)) {
    const PicTorusData p = pic_torus(t);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * t.g)); ++mask) {
      const QuadraticRefinement q = QuadraticRefinement::from_mask(t.g, mask);
      try {
        theta_class_from_q(p, q);
      } catch (const InconsistentSystem&) {
        ASSERT_FALSE(is_real_refinement(q, p.surface));
        ++rejected;
      }
    }
  }
  EXPECT_GT(rejected, 0u);
}

TEST(ThetaClasses, BasePointClassOnTwoCircleEllipticCurve) {
  const PicTorusData p = pic_torus(KleinType::make(1, 2, 0));
  const RealLineBundleClass c = theta_class_p0(p, 0);
  const auto comps = fixed_components(p.lattice);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(circle_values(p, c, comps[0])[0], 1);
  EXPECT_EQ(circle_values(p, c, comps[1])[0], 0);
  EXPECT_THROW(theta_class_p0(p, 2), InvalidInput);
}

TEST(ThetaClasses, BasePointClassValuesOnCircles) {
  for (const auto& t : klein_types(1, 5)) {
    const PicTorusData p = pic_torus(t);
    for (std::size_t i0 = 0; i0 < static_cast<std::size_t>(t.r); ++i0) {
      const auto v = circle_values(p, theta_class_p0(p, i0), fixed_components(p.lattice).front());
      for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], i == i0 ? (t.g & 1) : 1) << t.str();
    }
  }
}

TEST(ThetaClasses, ChiRequiresMatchingGenus) {
  const PicTorusData p = pic_torus(KleinType::make(2, 1, 1));
  EXPECT_THROW(chi_from_q(p, QuadraticRefinement::from_mask(1, 0)), InvalidInput);
}
