#include <gtest/gtest.h>

#include <map>

#include "support.hpp"
#include "realbundles/sw_localization.hpp"

using namespace realbundles;

namespace {

// Polynomials over Z/2 in Chern roots: e_1..e_r of E, m_1..m_k of N, and x.
// Used to recompute localized classes by the splitting principle.
struct RootPoly {
  std::size_t vars = 0;
  std::map<std::vector<int>, int> terms;

  static RootPoly constant(std::size_t vars, int c) {
    RootPoly p{vars, {}};
    if (c & 1) p.terms[std::vector<int>(vars, 0)] = 1;
    return p;
  }
  static RootPoly var(std::size_t vars, std::size_t i) {
    RootPoly p{vars, {}};
    std::vector<int> e(vars, 0);
    e[i] = 1;
    p.terms[e] = 1;
    return p;
  }
  void toggle(const std::vector<int>& e) {
    if (terms.count(e)) terms.erase(e);
    else terms[e] = 1;
  }
  friend RootPoly operator+(RootPoly a, const RootPoly& b) {
    for (const auto& [e, c] : b.terms) a.toggle(e);
    return a;
  }
  friend RootPoly operator*(const RootPoly& a, const RootPoly& b) {
    RootPoly p{a.vars, {}};
    for (const auto& [x, cx] : a.terms)
      for (const auto& [y, cy] : b.terms) {
        std::vector<int> e(a.vars);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = x[i] + y[i];
        p.toggle(e);
      }
    return p;
  }
  RootPoly degree_part(int d) const {
    RootPoly p{vars, {}};
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (int v : e) s += v;
      if (s == d) p.terms[e] = 1;
    }
    return p;
  }
  RootPoly truncate(int d) const {
    RootPoly p{vars, {}};
    for (int k = 0; k <= d; ++k) p = p + degree_part(k);
    return p;
  }
};

// Elementary symmetric polynomial of degree j in the variables [first, first + count).
RootPoly elementary(std::size_t vars, std::size_t first, std::size_t count, int j) {
  RootPoly total = RootPoly::constant(vars, 1);
  for (std::size_t i = 0; i < count; ++i) total = total * (RootPoly::constant(vars, 1) + RootPoly::var(vars, first + i));
  return total.degree_part(j);
}

// Localized class computed from roots.
RootPoly localized_by_roots(int n, int k, int r, const std::vector<int>& monomial) {
  const std::size_t vars = static_cast<std::size_t>(r + k + 1), x = vars - 1;
  RootPoly total = RootPoly::constant(vars, 1);
  for (int i = 0; i < r; ++i) {
    const RootPoly e = RootPoly::var(vars, static_cast<std::size_t>(i));
    total = total * (RootPoly::constant(vars, 1) + e) * (RootPoly::constant(vars, 1) + e + RootPoly::var(vars, x));
  }
  RootPoly product = RootPoly::constant(vars, 1);
  for (std::size_t i = 0; i < monomial.size(); ++i)
    for (int p = 0; p < monomial[i]; ++p) product = product * total.degree_part(2 * static_cast<int>(i + 1));
  // Segre class of N: prod over roots of 1 + m + m^2 + ...
  RootPoly segre = RootPoly::constant(vars, 1);
  for (int j = 0; j < k; ++j) {
    RootPoly geometric = RootPoly::constant(vars, 0), power = RootPoly::constant(vars, 1);
    for (int a = 0; a <= n; ++a) {
      geometric = geometric + power;
      power = power * RootPoly::var(vars, static_cast<std::size_t>(r + j));
    }
    segre = (segre * geometric).truncate(n);
  }
  RootPoly out = RootPoly::constant(vars, 0);
  for (const auto& [e, c] : product.terms) {
    if (e[x] < k) continue;
    std::vector<int> rest = e;
    rest[x] = 0;
    RootPoly coeff{vars, {{rest, 1}}};
    out = out + coeff * segre.degree_part(e[x] - k);
  }
  return out.truncate(n);
}

// The library's answer, rewritten in roots.
RootPoly to_roots(const GradedZ2Poly& p, int r, int k) {
  const std::size_t vars = static_cast<std::size_t>(r + k + 1);
  RootPoly out = RootPoly::constant(vars, 0);
  for (const auto& e : p.terms()) {
    RootPoly term = RootPoly::constant(vars, 1);
    for (int i = 0; i < r; ++i)
      for (int a = 0; a < e[static_cast<std::size_t>(i)]; ++a) term = term * elementary(vars, 0, r, i + 1);
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < e[static_cast<std::size_t>(r + j)]; ++a)
        term = term * elementary(vars, static_cast<std::size_t>(r), static_cast<std::size_t>(k), j + 1);
    for (int a = 0; a < e[static_cast<std::size_t>(r + k)]; ++a) term = term * RootPoly::var(vars, vars - 1);
    out = out + term;
  }
  return out;
}

}  // namespace

TEST(GradedPoly, ArithmeticAndTruncation) {
  auto ring = std::make_shared<GradedRing>(GradedRing{{"a", "b"}, {1, 2}, 4});
  const auto a = GradedZ2Poly::generator(ring, "a"), b = GradedZ2Poly::generator(ring, "b");
  const auto one = GradedZ2Poly::one(ring);
  EXPECT_TRUE((a + a).is_zero());
  EXPECT_EQ((one + a) * (one + a), one + a.pow(2));
  EXPECT_TRUE(b.pow(3).is_zero());
  EXPECT_EQ((a * b + b).part(2), b);
  EXPECT_EQ((one + a) * inverse_total_class(one + a), one);
  EXPECT_EQ((a * b).str(), "a*b");
  EXPECT_THROW(GradedZ2Poly::generator(ring, "c"), InvalidInput);
}

TEST(Binomials, LucasAgreesWithPascal) {
  for (int n = 0; n <= 40; ++n)
    for (int k = -1; k <= n + 1; ++k) EXPECT_EQ(binomial_mod2(n, k), oracle::binomial_mod2(n, k)) << n << " " << k;
}

TEST(Localization, SurfaceCaseClosedForm) {
  for (int r = 1; r <= 6; ++r) {
    const LocalizationInput in = standard_localization_input(2, 1, r, {1});
    GradedZ2Poly expected = in.w_E[0];
    if (oracle::binomial_mod2(r, 2)) expected = expected + in.w_N[0];
    EXPECT_EQ(localize(in), expected) << "r=" << r << " got " << localize(in).str();
  }
}

TEST(Localization, AgreesWithSplittingPrinciple) {
  const std::vector<std::tuple<int, int, int, std::vector<int>>> cases = {
      {2, 1, 1, {1}}, {2, 1, 3, {1}}, {2, 2, 2, {1}}, {4, 1, 2, {2}},   {4, 1, 2, {0, 1}},
      {4, 2, 3, {2}}, {4, 3, 2, {0, 1}}, {4, 1, 4, {2}}, {6, 2, 2, {1, 1}}, {6, 1, 3, {0, 0, 1}}};
  for (const auto& [n, k, r, mono] : cases) {
    const LocalizationInput in = standard_localization_input(n, k, r, mono, n);
    const auto lib = to_roots(localize(in), r, k);
    const auto ref = localized_by_roots(n, k, r, mono);
    EXPECT_EQ(lib.terms, ref.terms) << "n=" << n << " k=" << k << " r=" << r;
  }
}

TEST(Localization, RejectsBadInput) {
  EXPECT_THROW(localize(standard_localization_input(3, 1, 1, {1})), InvalidInput);
  EXPECT_THROW(localize(standard_localization_input(2, 1, 1, {2})), InvalidInput);
  EXPECT_THROW(localize(standard_localization_input(2, 3, 1, {1})), InvalidInput);
}

TEST(Pairings, CirclesAndPoints) {
  const LocalizationInput in = standard_localization_input(2, 1, 1, {1});
  EXPECT_EQ(pair_on_circles(in.w_E[0], {{{0, 1}}, {{0, 1}}, {{0, 1}}}), 1);
  EXPECT_EQ(pair_on_circles(in.w_E[0], {{{0, 1}}, {{0, 0}}, {{0, 1}}}), 0);
  EXPECT_THROW(pair_on_circles(GradedZ2Poly::one(in.ring), {}), InvalidInput);
  EXPECT_EQ(pair_on_points(GradedZ2Poly::one(in.ring), 3), 1);
  EXPECT_EQ(pair_on_points(GradedZ2Poly(in.ring), 3), 0);
}

TEST(DegreeParity, ValidCurveClasses) {
  std::mt19937_64 rng(8);
  const auto types = klein_types(1, 6);
  for (int t = 0; t < 300; ++t) {
    const KleinType k = types[rng() % types.size()];
    Z2Vector w(static_cast<std::size_t>(k.r));
    int sum = 0;
    for (auto& x : w) sum ^= (x = rng() & 1);
    const long long d = 2 * (static_cast<long long>(rng() % 21) - 10) + sum;
    EXPECT_TRUE(degree_parity_check(validate_curve_class(k, d, w)));
    EXPECT_EQ(localized_degree_parity(1, w), sum);
  }
}

TEST(DegreeParity, HigherRankCirclesOnly) {
  // With trivial normal bundles the localized class is w1(E) for every rank.
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(localized_degree_parity(r, {1, 1, 0}), 0);
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(localized_degree_parity(r, {1, 0, 0}), 1);
}
