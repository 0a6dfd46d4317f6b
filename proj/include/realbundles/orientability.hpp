#pragma once

// Orientability of the real locus of Quot schemes of trivial quotients over a
// real curve, one verdict per component of the real Picard torus.

#include <vector>

#include "theta_forms.hpp"

namespace realbundles {

// Data of the Quot scheme of torsion-free quotients of E0^v with kernel of
// rank r0 and degree d (e0 = deg E0, mu_max = maximal slope of E0).
struct QuotSetup {
  KleinType type;
  int r0 = 1;
  long long e0 = 0;
  Rational mu_max = 0;
  long long d = 0;
  std::size_t p0_circle = 0;  // real circle containing the base point
  Z2Vector det_component;     // component of Pic^0 containing det E0 (-e0 p0)
};

struct StabilityBounds {
  Rational bound_generic;    // d must exceed this for the Abel-Jacobi map to be a bundle
  Rational bound_smooth;     // d must exceed this for smoothness of the Quot scheme
  bool satisfied = false;
};

inline StabilityBounds stability_bounds(const QuotSetup& s) {
  if (s.r0 < 1) throw InvalidInput("r0 must be positive");
  const Rational mu(s.e0, s.r0);
  const Rational gm1(s.type.g - 1);
  StabilityBounds b;
  b.bound_generic = std::max(Rational(-mu + 2 * gm1), Rational(s.mu_max * (s.r0 - 1) - mu * s.r0 + 2 * gm1));
  b.bound_smooth = Rational(-mu + gm1 + Rational(1, s.r0));
  b.satisfied = Rational(s.d) > b.bound_generic && Rational(s.d) > b.bound_smooth;
  return b;
}

inline bool stability_bound_check(const QuotSetup& s) { return stability_bounds(s).satisfied; }

inline FixedComponentIndex component_from_coords(const LatticeInvolution& L, const Z2Vector& coords) {
  Z2Vector z = coords;
  if (z.empty()) z.assign(L.component_group().rank(), 0);
  return {z, L.component_group().lift(z)};
}

// Class of the determinant of the index bundle, moved to Pic^0: r0 copies of
// the p0 theta class, one of them translated to the component of det E0.
inline RealLineBundleClass det_ind_class(const QuotSetup& s, const PicTorusData& p) {
  if (!(s.type == p.type)) throw InvalidInput("setup and Picard torus are for different curves");
  const RealLineBundleClass theta = theta_class_p0(p, s.p0_circle);
  const FixedComponentIndex where = component_from_coords(p.lattice, s.det_component);
  if (component_position(where) == 0) return class_scale(theta, s.r0);
  return class_add(class_scale(theta, s.r0 - 1), translate_class(theta, where));
}

// The same class through a splitting det E0 (-e0 p0) = V (x) W with V, W in
// the given components; needs r0 >= 2.
inline RealLineBundleClass det_ind_class_split(const QuotSetup& s, const PicTorusData& p, const Z2Vector& v_component,
                                               const Z2Vector& w_component) {
  if (s.r0 < 2) throw InvalidInput("a splitting needs r0 >= 2");
  const RealLineBundleClass theta = theta_class_p0(p, s.p0_circle);
  const auto V = component_from_coords(p.lattice, v_component);
  const auto W = component_from_coords(p.lattice, w_component);
  return class_add(class_add(translate_class(theta, V), class_scale(theta, s.r0 - 2)), translate_class(theta, W));
}

struct ComponentOrientability {
  FixedComponentIndex component;
  long long fiber_rank = 0;
  Z2Vector w1;             // w1 of the determinant of the index bundle, on the invariant basis
  std::vector<int> w1_on_circles;
  bool orientable = false;
};

inline std::vector<ComponentOrientability> orientability_report(const QuotSetup& s, const PicTorusData& p) {
  if (!stability_bound_check(s)) throw InvalidInput("degree is outside the stable range");
  if (s.p0_circle >= static_cast<std::size_t>(s.type.r)) throw InvalidInput("no such real circle");
  const RealLineBundleClass det = det_ind_class(s, p);
  const SWFunction f = sw_function(det);
  const long long rank = (s.e0 + s.r0 * s.d) + s.r0 * (1 - s.type.g);
  std::vector<ComponentOrientability> out;
  for (const auto& c : f.components()) {
    ComponentOrientability row;
    row.component = c;
    row.fiber_rank = rank;
    row.w1 = f.at(c);
    for (const auto& dual : p.circle_duals) row.w1_on_circles.push_back(f.value(c, dual));
    const bool w1_zero = std::all_of(row.w1.begin(), row.w1.end(), [](auto b) { return b == 0; });
    row.orientable = (rank % 2 == 0) && w1_zero;
    out.push_back(std::move(row));
  }
  return out;
}

// Symmetric products: E0 = O, so r0 = 1, e0 = 0 and mu_max = 0.
inline QuotSetup symmetric_power_setup(const KleinType& t, long long d, std::size_t p0_circle = 0) {
  QuotSetup s;
  s.type = t;
  s.r0 = 1;
  s.e0 = 0;
  s.mu_max = 0;
  s.d = d;
  s.p0_circle = p0_circle;
  return s;
}

inline std::vector<ComponentOrientability> symmetric_power_report(const KleinType& t, long long d,
                                                                  std::size_t p0_circle = 0) {
  return orientability_report(symmetric_power_setup(t, d, p0_circle), pic_torus(t));
}

}  // namespace realbundles
