#pragma once

// Seeded generators for property checks: involutions of Z^n, anti-invariant
// forms and Real characters.

#include <random>

#include "real_torus.hpp"

namespace realbundles {

// tau = P D P^{-1} with D a direct sum of (1), (-1) and swap blocks and P a
// short random product of elementary matrices; entries bounded by max_entry.
inline IntegerMatrix random_involution(std::mt19937_64& rng, std::size_t n, int max_entry = 4) {
  std::uniform_int_distribution<std::size_t> pick(0, n ? n - 1 : 0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    const std::size_t swaps = std::uniform_int_distribution<std::size_t>(0, n / 2)(rng);
    const std::size_t plus = std::uniform_int_distribution<std::size_t>(0, n - 2 * swaps)(rng);
    IntegerMatrix D(n, n);
    std::size_t i = 0;
    for (std::size_t k = 0; k < swaps; ++k, i += 2) {
      D(i, i + 1) = 1;
      D(i + 1, i) = 1;
    }
    for (std::size_t k = 0; k < plus; ++k, ++i) D(i, i) = 1;
    for (; i < n; ++i) D(i, i) = -1;

    IntegerMatrix P = IntegerMatrix::identity(n), Pi = IntegerMatrix::identity(n);
    const std::size_t ops = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
    for (std::size_t k = 0; k < ops && n > 1; ++k) {
      const std::size_t a = pick(rng), b = pick(rng);
      if (a == b) continue;
      const Integer m = coin(rng) ? 1 : -1;
      P.add_col(a, b, m);   // P <- P E
      Pi.add_row(b, a, -m);  // P^{-1} <- E^{-1} P^{-1}
    }
    IntegerMatrix tau = P * D * Pi;
    if (tau.max_abs() <= max_entry) return tau;
  }
}

// u = A - tau^T A tau for a random alternating A with entries in [-bound, bound].
inline IntegerMatrix random_anti_invariant_form(std::mt19937_64& rng, const LatticeInvolution& L, int bound = 1) {
  const std::size_t n = L.dim();
  std::uniform_int_distribution<int> entry(-bound, bound);
  IntegerMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      A(i, j) = entry(rng);
      A(j, i) = -A(i, j);
    }
  return A - L.tau().transpose() * A * L.tau();
}

inline Rational random_angle(std::mt19937_64& rng) {
  const int den = std::uniform_int_distribution<int>(1, 6)(rng);
  const int num = std::uniform_int_distribution<int>(0, 2 * den - 1)(rng);
  return Rational(num, den);
}

inline UCharacter random_ucharacter(std::mt19937_64& rng, const IntegerMatrix& u) {
  std::vector<Rational> angles;
  for (std::size_t i = 0; i < u.rows(); ++i) angles.push_back(random_angle(rng));
  return UCharacter(u, std::move(angles));
}

// A Real u-character on a random component, moved along the component by
// the character exp(pi i (1 - tau^T) x) for random rational x.
inline UCharacter random_real_ucharacter(std::mt19937_64& rng, const LatticeInvolution& L,
                                         const AntiInvariantAltForm& u) {
  const auto reps = real_ucharacter_components(L, u);
  const auto& base = reps[std::uniform_int_distribution<std::size_t>(0, reps.size() - 1)(rng)];
  const std::size_t n = L.dim();
  std::vector<Rational> x(n);
  for (auto& v : x) v = random_angle(rng);
  std::vector<Rational> angles = base.angles();
  for (std::size_t i = 0; i < n; ++i) {
    Rational shift = x[i];
    for (std::size_t j = 0; j < n; ++j) shift -= Rational(L.tau()(j, i)) * x[j];
    angles[i] += shift;
  }
  return UCharacter(u.matrix(), std::move(angles));
}

}  // namespace realbundles
