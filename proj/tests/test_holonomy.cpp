#include <gtest/gtest.h>

#include "support.hpp"
#include "realbundles/holonomy.hpp"

using namespace realbundles;

namespace {

const IntegerMatrix kSymplectic{{0, 1}, {-1, 0}};

RealVector random_point(std::mt19937_64& rng, std::size_t n, double r = 1.5) {
  std::uniform_real_distribution<double> d(-r, r);
  RealVector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST(Segment, ClosedFormMatchesOde) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const LatticeInvolution L(random_involution(rng, 2 + rng() % 4));
    const ConnectionAu c(random_anti_invariant_form(rng, L));
    const RealVector v0 = random_point(rng, c.dim()), w = random_point(rng, c.dim());
    const Complex exact = segment_holonomy(c, v0, w, TransportMode::ClosedForm);
    const Complex ode = segment_holonomy(c, v0, w, TransportMode::Ode);
    EXPECT_LT(std::abs(exact - ode), 1e-8);
    EXPECT_NEAR(std::abs(ode), 1.0, 1e-10);
  }
}

TEST(Segment, ExplicitValue) {
  // exp(pi i u(v0, w)) with u(v0, w) = 0.3 * 2 - 0.1 * 1 = 0.5
  const ConnectionAu c(kSymplectic);
  const Complex z = segment_holonomy(c, {0.3, 0.1}, {1, 2});
  EXPECT_NEAR(z.real(), 0.0, 1e-14);
  EXPECT_NEAR(z.imag(), 1.0, 1e-14);
}

TEST(Connection, RejectsNonAlternatingForms) {
  EXPECT_THROW(ConnectionAu(IntegerMatrix{{1, 0}, {0, 0}}), InvalidInput);
  EXPECT_THROW(ConnectionAu(IntegerMatrix{{0, 1}, {1, 0}}), InvalidInput);
}

TEST(Loop, ClosedFormMatchesOde) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const LatticeInvolution L(random_involution(rng, 2 + rng() % 4));
    const UCharacter a = random_ucharacter(rng, random_anti_invariant_form(rng, L));
    IntegerVector l(L.dim());
    for (auto& x : l) x = static_cast<int>(rng() % 5) - 2;
    const RealVector mu = random_point(rng, L.dim(), 1.0);
    EXPECT_LT(std::abs(loop_holonomy(a, mu, l) - loop_holonomy_ode(a, mu, l)), 1e-8);
  }
}

TEST(Cocycle, HoldsForUCharacters) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const LatticeInvolution L(random_involution(rng, 2 + rng() % 5));
    const UCharacter a = random_ucharacter(rng, random_anti_invariant_form(rng, L));
    const CocycleReport r = check_cocycle(ConnectionAu(a.form()), a, 50, rng());
    EXPECT_TRUE(r.ok) << r.max_residual;
  }
}

TEST(Cocycle, FailsForPlainCharactersOfNonzeroForms) {
  // Angles alone, with the sign twist dropped, break the cocycle when u is odd.
  const UCharacter twisted(kSymplectic, {Rational(0), Rational(0)});
  const UCharacter untwisted(IntegerMatrix(2, 2), {Rational(0), Rational(0)});
  const ConnectionAu c(kSymplectic);
  EXPECT_THROW(check_cocycle(c, UCharacter(IntegerMatrix(3, 3), std::vector<Rational>(3, Rational(0))), 5, 1),
               InvalidInput);
  EXPECT_TRUE(check_cocycle(c, twisted, 50, 1).ok);
  // e_{e1} e_{e2} vs e_{e1+e2}: the untwisted character misses a factor -1.
  const Complex lhs = factor_of_automorphy(c, untwisted, {0, 1}, {1, 0}) * factor_of_automorphy(c, untwisted, {1, 0}, {0, 0});
  const Complex rhs = factor_of_automorphy(c, untwisted, {1, 1}, {0, 0});
  EXPECT_NEAR(std::abs(lhs + rhs), 0.0, 1e-12);
}

TEST(Triangle, FluxMatchesCharacterDefect) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const LatticeInvolution L(random_involution(rng, 2 + rng() % 4));
    const UCharacter a = random_ucharacter(rng, random_anti_invariant_form(rng, L));
    IntegerVector l1(L.dim()), l2(L.dim());
    for (auto& x : l1) x = static_cast<int>(rng() % 5) - 2;
    for (auto& x : l2) x = static_cast<int>(rng() % 5) - 2;
    const TriangleReport r = triangle_identity(a, l1, l2);
    EXPECT_LT(r.residual, 1e-8);
    // The flux is -pi i u(l1, l2) up to the quadrature error.
    EXPECT_NEAR(r.flux.imag(), -kPi * bilinear(a.form(), l1, l2).convert_to<double>(), 1e-9);
  }
}

TEST(CapFlux, CounterClockwiseUnitCell) {
  const ConnectionAu c(kSymplectic);
  const PiecewiseLinearLoop square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const HolonomyFormulaReport r = holonomy_formula_check(c, square, cone_cap(square));
  EXPECT_LT(r.residual, 1e-6);
  EXPECT_NEAR(r.flux.imag(), 2 * kPi, 1e-6);
  const PiecewiseLinearLoop reversed{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
  const HolonomyFormulaReport back = holonomy_formula_check(c, reversed, cone_cap(reversed));
  EXPECT_NEAR(back.flux.imag(), -2 * kPi, 1e-6);
}

TEST(CapFlux, RandomPolygons) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 10; ++t) {
    const LatticeInvolution L(random_involution(rng, 2 + rng() % 3));
    const ConnectionAu c(random_anti_invariant_form(rng, L));
    PiecewiseLinearLoop loop;
    for (int k = 0; k < 3 + static_cast<int>(rng() % 3); ++k) loop.vertices.push_back(random_point(rng, c.dim(), 0.6));
    const HolonomyFormulaReport r = holonomy_formula_check(c, loop, cone_cap(loop));
    EXPECT_LT(r.residual, 1e-6);
  }
}

TEST(CapFlux, RejectsCapsWithWrongBoundary) {
  const ConnectionAu c(kSymplectic);
  const PiecewiseLinearLoop square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const Cap shifted = [](double s, double t) { return RealVector{s + 0.5, t}; };
  EXPECT_THROW(holonomy_formula_check(c, square, shifted), InvalidInput);
}

TEST(CanonicalFactor, GaugeRelatesHolomorphicAndUnitaryFactors) {
  const RealMatrix J{{0, -1}, {1, 0}};
  for (const auto& angles : {std::vector<Rational>{0, 0}, std::vector<Rational>{Rational(1, 3), Rational(5, 4)}}) {
    const CanonicalFactors f = canonical_factor(ComplexTorusData(J, kSymplectic), UCharacter(kSymplectic, angles));
    EXPECT_LT(f.gauge_residual(100, 3), 1e-9);
    EXPECT_LT(f.cocycle_residual(100, 4), 1e-9);
  }
}

TEST(CanonicalFactor, ValidatesComplexStructure) {
  EXPECT_THROW(ComplexTorusData(RealMatrix{{1, 0}, {0, 1}}, kSymplectic), InvalidInput);
  // u(Jv, Jw) = u(v, w) fails for this J and u of rank 2 in dimension 4.
  const RealMatrix J4{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  const IntegerMatrix u4{{0, 0, 1, 0}, {0, 0, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 0}};
  EXPECT_THROW(ComplexTorusData(J4, u4), InvalidInput);
}
