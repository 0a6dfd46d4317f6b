#pragma once

// Theta characteristics seen through their quadratic forms on H_1(C, Z/2),
// and the topological classes of the corresponding Real theta bundles on the
// real Picard torus.

#include <map>
#include <stdexcept>
#include <vector>

#include "klein_surface.hpp"

namespace realbundles {

// q : H_1(C, Z/2) -> Z/2 with q(x + y) = q(x) + q(y) + x.y, stored by its
// values on a_1..a_g, b_1..b_g.
struct QuadraticRefinement {
  int g = 0;
  Z2Vector values;

  static QuadraticRefinement from_mask(int g, std::uint64_t mask) {
    QuadraticRefinement q{g, Z2Vector(static_cast<std::size_t>(2 * g))};
    for (int i = 0; i < 2 * g; ++i) q.values[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1);
    return q;
  }
};

inline Z2Vector reduce_mod2(const IntegerVector& v) {
  Z2Vector z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = static_cast<std::uint8_t>(mod2(v[i]));
  return z;
}

inline int intersection_mod2(int g, const Z2Vector& x, const Z2Vector& y) {
  int s = 0;
  for (int i = 0; i < g; ++i) {
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(g + i);
    s ^= (x[a] & y[b]) ^ (x[b] & y[a]);
  }
  return s;
}

// q(sum x_i h_i) = sum x_i q(h_i) + sum_{i<j} x_i x_j (h_i . h_j)
inline int eval_q(const QuadraticRefinement& q, const Z2Vector& x) {
  if (x.size() != q.values.size()) throw InvalidInput("homology class of wrong length");
  int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s ^= x[i] & q.values[i];
  for (int i = 0; i < q.g; ++i) s ^= x[static_cast<std::size_t>(i)] & x[static_cast<std::size_t>(q.g + i)];
  return s;
}

inline int eval_q(const QuadraticRefinement& q, const IntegerVector& x) { return eval_q(q, reduce_mod2(x)); }

inline int arf(const QuadraticRefinement& q) {
  int s = 0;
  for (int i = 0; i < q.g; ++i) s ^= q.values[static_cast<std::size_t>(i)] & q.values[static_cast<std::size_t>(q.g + i)];
  return s;
}

// Forms of Real theta characteristics are exactly the iota-invariant ones.
inline bool is_real_refinement(const QuadraticRefinement& q, const SurfaceBasis& b) {
  for (std::size_t k = 0; k < b.iota.cols(); ++k)
    if (eval_q(q, b.iota.column(k)) != q.values[k]) return false;
  return true;
}

// The sign character lambda -> (-1)^{q(lambda cap [C])}; a u-character for
// the cup form.
inline UCharacter chi_from_q(const PicTorusData& p, const QuadraticRefinement& q) {
  if (q.g != p.type.g) throw InvalidInput("refinement and curve have different genus");
  const std::size_t n = p.lattice.dim();
  std::vector<Rational> angles;
  for (std::size_t i = 0; i < n; ++i) angles.emplace_back(eval_q(q, p.cap_fundamental(unit_vector(n, i))));
  return UCharacter(p.cup_form, std::move(angles));
}

// Thrown when prescribed circle values are incompatible with the quadratic
// datum of the cup form.
struct InconsistentSystem : std::domain_error {
  using std::domain_error::domain_error;
};

// The unique class with c1 = cup form whose w0 takes the given values on the
// circle duals [C_i]^v.
inline RealLineBundleClass class_with_circle_values(const PicTorusData& p, const Z2Vector& circle_values) {
  if (circle_values.size() != p.circle_duals.size()) throw InvalidInput("need one value per real circle");
  const LatticeInvolution& L = p.lattice;
  const std::size_t n = L.dim(), unknowns = L.fixed_rank();
  std::vector<Z2Vector> rows;
  Z2Vector rhs;
  for (std::size_t i = 0; i < n; ++i) {
    const IntegerVector e = unit_vector(n, i);
    rows.push_back(reduce_mod2(L.fixed_coordinates(add(e, L.apply(e)))));
    rhs.push_back(static_cast<std::uint8_t>(mod2(bilinear(p.cup_form, e, L.apply(e)))));
  }
  for (std::size_t i = 0; i < circle_values.size(); ++i) {
    rows.push_back(reduce_mod2(L.fixed_coordinates(p.circle_duals[i])));
    rhs.push_back(circle_values[i]);
  }
  std::size_t rank = 0;
  const auto w0 = solve_mod2(rows, rhs, unknowns, &rank);
  if (!w0) throw InconsistentSystem("circle values contradict the quadratic datum of the cup form");
  if (rank != unknowns) throw std::logic_error("circle duals and norms do not span the invariant lattice");
  return make_class(L, p.cup_form, *w0);
}

// Class of the Real theta bundle of a Real theta characteristic with form q:
// w0([C_i]^v) = q([C_i]).
inline RealLineBundleClass theta_class_from_q(const PicTorusData& p, const QuadraticRefinement& q) {
  Z2Vector values;
  for (const auto& c : p.surface.circles) values.push_back(static_cast<std::uint8_t>(eval_q(q, c)));
  return class_with_circle_values(p, values);
}

inline RealLineBundleClass spin_class(const PicTorusData& p, const QuadraticRefinement& q) {
  return theta_class_from_q(p, q);
}

// Class of O(Theta - [O((g-1) p0)]) for p0 on circle i0: w0 is 1 on every
// circle dual except the one of p0's circle, where it is g mod 2.
inline RealLineBundleClass theta_class_p0(const PicTorusData& p, std::size_t i0) {
  if (i0 >= p.circle_duals.size()) throw InvalidInput("no such real circle");
  Z2Vector values(p.circle_duals.size(), 1);
  values[i0] = static_cast<std::uint8_t>(p.type.g & 1);
  return class_with_circle_values(p, values);
}

inline std::vector<int> circle_values(const PicTorusData& p, const RealLineBundleClass& c,
                                      const FixedComponentIndex& where) {
  const SWFunction f = sw_function(c);
  std::vector<int> out;
  for (const auto& d : p.circle_duals) out.push_back(f.value(where, d));
  return out;
}

struct BoundaryCensus {
  KleinType type;
  // Boundary vector (q([C_i]))_i -> number of refinements producing it.
  std::map<Z2Vector, std::size_t> all;
  std::map<Z2Vector, std::size_t> real;  // iota-invariant refinements only
  std::size_t real_total = 0;
  bool all_satisfy_circle_parity = true;   // q(sum C_i) = s mod 2 for every q
  bool real_satisfy_circle_parity = true;  // same, over Real refinements
};

// Brute force over all 2^(2g) refinements.
inline BoundaryCensus realizable_boundary_data(const KleinType& t) {
  if (t.g > 12) throw InvalidInput("genus too large for enumeration");
  const SurfaceBasis b = build_surface_basis(t);
  IntegerVector total(b.iota.rows());
  for (const auto& c : b.circles) total = add(total, c);
  BoundaryCensus out;
  out.type = t;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * t.g)); ++mask) {
    const QuadraticRefinement q = QuadraticRefinement::from_mask(t.g, mask);
    Z2Vector bv;
    for (const auto& c : b.circles) bv.push_back(static_cast<std::uint8_t>(eval_q(q, c)));
    const bool parity = eval_q(q, total) == t.s() % 2;
    ++out.all[bv];
    out.all_satisfy_circle_parity = out.all_satisfy_circle_parity && parity;
    if (is_real_refinement(q, b)) {
      ++out.real[bv];
      ++out.real_total;
      out.real_satisfy_circle_parity = out.real_satisfy_circle_parity && parity;
    }
  }
  return out;
}

// w-vectors of curve classes of degree g - 1, obtained from boundary vectors
// by adding 1 in each coordinate.
inline std::vector<Z2Vector> boundary_to_w(const std::map<Z2Vector, std::size_t>& census) {
  std::vector<Z2Vector> out;
  for (const auto& [bv, count] : census) {
    Z2Vector w = bv;
    for (auto& x : w) x ^= 1;
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t theta_chars_per_component(int g) { return std::size_t{1} << g; }

}  // namespace realbundles
