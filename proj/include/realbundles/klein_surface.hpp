#pragma once

// Real curves (C, iota) with nonempty real locus: the topological type
// (g, r, a), an adapted symplectic basis of H_1, and the real Picard torus.

#include <string>
#include <vector>

#include "real_torus.hpp"

namespace realbundles {

// g = genus, r = number of real circles, a = 0 when C minus its real locus is
// disconnected and 1 otherwise.
struct KleinType {
  int g = 0;
  int r = 1;
  int a = 0;

  int s() const { return g + 1 - r; }

  static KleinType make(int g, int r, int a) {
    KleinType t{g, r, a};
    t.validate();
    return t;
  }

  void validate() const {
    if (g < 0) throw InvalidInput("genus must be nonnegative");
    if (a != 0 && a != 1) throw InvalidInput("a must be 0 or 1");
    if (r < 1) throw InvalidInput("the real locus must be nonempty (r >= 1)");
    if (s() < 0) throw InvalidInput("too many real circles: r <= g + 1");
    if (a == 0 && s() % 2 != 0) throw InvalidInput("separating curves need g + 1 - r even");
    if (a == 1 && r > g) throw InvalidInput("non-separating curves need r <= g");
  }

  std::string str() const {
    return "(" + std::to_string(g) + "," + std::to_string(r) + "," + std::to_string(a) + ")";
  }
  friend bool operator==(const KleinType&, const KleinType&) = default;
};

inline bool is_valid(int g, int r, int a) {
  try {
    KleinType::make(g, r, a);
    return true;
  } catch (const InvalidInput&) {
    return false;
  }
}

// Every valid type with genus in [g_min, g_max], ordered by (g, r, a).
inline std::vector<KleinType> klein_types(int g_min, int g_max) {
  std::vector<KleinType> out;
  for (int g = g_min; g <= g_max; ++g)
    for (int r = 1; r <= g + 1; ++r)
      for (int a = 0; a <= 1; ++a)
        if (is_valid(g, r, a)) out.push_back({g, r, a});
  return out;
}

// Intersection matrix of the basis (a_1..a_g, b_1..b_g) with a_i . b_i = 1.
inline IntegerMatrix standard_symplectic(int g) {
  const auto n = static_cast<std::size_t>(2 * g);
  IntegerMatrix J(n, n);
  for (int i = 0; i < g; ++i) {
    J(i, g + i) = 1;
    J(g + i, i) = -1;
  }
  return J;
}

// A symplectic basis of H_1(C, Z) adapted to iota, as columns of iota_* in the
// order (a_1..a_g, b_1..b_g), plus the classes of the real circles.
struct SurfaceBasis {
  KleinType type;
  IntegerMatrix iota;                // iota_* on H_1
  IntegerMatrix J;                   // intersection form
  std::vector<IntegerVector> circles;  // [C_1], ..., [C_r]
};

inline SurfaceBasis build_surface_basis(const KleinType& t) {
  t.validate();
  const int g = t.g, r = t.r;
  const auto n = static_cast<std::size_t>(2 * g);
  SurfaceBasis b;
  b.type = t;
  b.J = standard_symplectic(g);
  b.iota = IntegerMatrix(n, n);
  IntegerMatrix& M = b.iota;
  auto A = [](int i) { return static_cast<std::size_t>(i); };     // a_{i+1}
  auto B = [g](int i) { return static_cast<std::size_t>(g + i); };  // b_{i+1}
  for (int i = 0; i < g; ++i) M(A(i), A(i)) = 1;

  if (t.a == 0) {
    const int k = t.s() / 2;
    for (int i = 0; i < r - 1; ++i) M(B(i), B(i)) = -1;
    for (int j = 0; j < k; ++j) {
      // b_{r-1+j} = y_j       -> a_{r-1+k+j} - b_{r-1+j}
      M(A(r - 1 + k + j), B(r - 1 + j)) = 1;
      M(B(r - 1 + j), B(r - 1 + j)) = -1;
      // b_{r-1+k+j} = iota x_j -> a_{r-1+j} - b_{r-1+k+j}
      M(A(r - 1 + j), B(r - 1 + k + j)) = 1;
      M(B(r - 1 + k + j), B(r - 1 + k + j)) = -1;
    }
    IntegerVector last(n);
    for (int i = 0; i < r - 1; ++i) {
      b.circles.push_back(unit_vector(n, A(i)));
      last[A(i)] = -1;
    }
    b.circles.push_back(last);
  } else {
    for (int j = 0; j < g; ++j) {
      M(B(j), B(j)) = -1;
      for (int i = 0; i < g; ++i) M(A(i), B(j)) -= 1;
      if (j >= r) M(A(j), B(j)) -= 1;
    }
    for (int i = 0; i < r; ++i) b.circles.push_back(unit_vector(n, A(i)));
  }
  return b;
}

// The real Picard torus Pic^0 = H^1(C, R) / H^1(C, Z), in the basis dual to
// (a, b). The involution is minus the transpose of iota_*, the Chern class of
// the theta bundle is the cup form, and [C_i]^v is the Poincare dual of C_i.
struct PicTorusData {
  KleinType type;
  SurfaceBasis surface;
  LatticeInvolution lattice;
  IntegerMatrix cup_form;
  std::vector<IntegerVector> circle_duals;

  // Poincare dual of a homology class h: the functional x -> h . x.
  IntegerVector poincare_dual(const IntegerVector& h) const { return -surface.J * h; }
  // Inverse of poincare_dual.
  IntegerVector cap_fundamental(const IntegerVector& lambda) const { return surface.J * lambda; }
  std::size_t component_count() const { return std::size_t{1} << lattice.component_group().rank(); }
};

inline PicTorusData pic_torus(const KleinType& t) {
  PicTorusData p;
  p.type = t;
  p.surface = build_surface_basis(t);
  p.lattice = LatticeInvolution(-p.surface.iota.transpose());
  p.cup_form = p.surface.J;
  for (const auto& c : p.surface.circles) p.circle_duals.push_back(p.poincare_dual(c));
  return p;
}

// Degree d and the mod 2 degrees w_i of the real line bundle on each circle.
struct CurveBundleClass {
  KleinType type;
  long long d = 0;
  Z2Vector w;
};

inline CurveBundleClass validate_curve_class(const KleinType& t, long long d, const Z2Vector& w) {
  t.validate();
  if (w.size() != static_cast<std::size_t>(t.r)) throw InvalidInput("need one value per real circle");
  int sum = 0;
  for (auto x : w) {
    if (x > 1) throw InvalidInput("circle values must be 0 or 1");
    sum ^= x;
  }
  if (sum != static_cast<int>(((d % 2) + 2) % 2))
    throw InvalidInput("degree and circle values have different parity");
  return {t, d, w};
}

struct CircleSpanReport {
  bool spans_invariants = false;   // <C_i> + (1 + iota) H_1 = H_1^iota
  bool relations_ok = false;       // the expected relations among the C_i
  bool intersection_ok = false;    // <C_i> meets (1 + iota) H_1 as expected
  bool parity_ok = false;          // x . iota x = s mod 2 where sum C_i = x + iota x (a = 1)
  bool ok() const { return spans_invariants && relations_ok && intersection_ok && parity_ok; }
};

namespace detail {

// Is every column of `sub` in the column lattice of `super`?
inline bool lattice_contains(const IntegerMatrix& super, const IntegerMatrix& sub) {
  for (std::size_t j = 0; j < sub.cols(); ++j)
    if (!lattice_solve(super, sub.column(j))) return false;
  return true;
}

inline bool same_lattice(const IntegerMatrix& x, const IntegerMatrix& y) {
  return lattice_contains(x, y) && lattice_contains(y, x);
}

inline IntegerMatrix hcat(const IntegerMatrix& x, const IntegerMatrix& y) {
  IntegerMatrix m(x.rows(), x.cols() + y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
    for (std::size_t j = 0; j < y.cols(); ++j) m(i, x.cols() + j) = y(i, j);
  }
  return m;
}

// Generators of im(x) intersected with im(y).
inline IntegerMatrix lattice_intersection(const IntegerMatrix& x, const IntegerMatrix& y) {
  const IntegerMatrix K = kernel_basis(hcat(x, -y));
  return x * K.row_range(0, x.cols());
}

}  // namespace detail

// How the real circles sit in H_1 relative to the norms (1 + iota) H_1.
inline CircleSpanReport verify_circle_span(const KleinType& t) {
  const SurfaceBasis b = build_surface_basis(t);
  const std::size_t n = b.iota.rows();
  const IntegerMatrix I = IntegerMatrix::identity(n);
  const IntegerMatrix V = IntegerMatrix::from_columns(b.circles, n);
  const IntegerMatrix norms = I + b.iota;
  const IntegerMatrix invariants = kernel_basis(b.iota - I);
  CircleSpanReport rep;
  rep.spans_invariants = detail::same_lattice(detail::hcat(V, norms), invariants);

  const IntegerMatrix relations = kernel_basis(V);
  const IntegerMatrix meet = detail::lattice_intersection(V, norms);
  if (t.a == 0) {
    IntegerMatrix ones(static_cast<std::size_t>(t.r), 1);
    for (int i = 0; i < t.r; ++i) ones(static_cast<std::size_t>(i), 0) = 1;
    rep.relations_ok = detail::same_lattice(relations, ones);
    rep.intersection_ok = detail::same_lattice(meet, Integer(2) * V);
    rep.parity_ok = true;
  } else {
    rep.relations_ok = relations.cols() == 0;
    IntegerVector total(n);
    for (const auto& c : b.circles) total = add(total, c);
    IntegerMatrix expected = Integer(2) * V.columns(0, static_cast<std::size_t>(t.r - 1));
    expected = detail::hcat(expected, IntegerMatrix::from_columns({total}, n));
    rep.intersection_ok = detail::same_lattice(meet, expected);
    const auto x = lattice_solve(norms, total);
    rep.parity_ok = x && mod2(bilinear(b.J, *x, b.iota * *x)) == t.s() % 2;
  }
  return rep;
}

}  // namespace realbundles
