#pragma once

// Real structures on a lattice and the topological classification of Real
// line bundles on the corresponding real torus: a class is a pair (u, w0)
// with u an anti-invariant alternating form and w0 a mod 2 functional on the
// invariant sublattice extending the quadratic datum of u.

#include <memory>
#include <string>
#include <vector>

#include "exact_linalg.hpp"

namespace realbundles {

// Representative of a rational number modulo 2, in [0, 2).
inline Rational reduce_angle(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  const Integer twice = 2 * den;
  Integer r = num % twice;
  if (r < 0) r += twice;
  return Rational(r, den);
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline IntegerMatrix inverse_unimodular(const IntegerMatrix& m) {
  const SmithDecomposition s = smith_normal_form(m);
  if (!m.square() || !(s.D == IntegerMatrix::identity(m.rows()))) throw InvalidInput("matrix is not unimodular");
  return s.V * s.U;
}

// An involution tau of Z^n. Holds a saturated basis of the invariant sublattice
// (from the Smith form of id - tau) and the group of fixed components.
class LatticeInvolution {
 public:
  LatticeInvolution() : LatticeInvolution(IntegerMatrix()) {}
  explicit LatticeInvolution(IntegerMatrix tau) {
    if (!is_involution(tau)) throw InvalidInput("tau is not an involution of the lattice");
    auto d = std::make_shared<Data>();
    const std::size_t n = tau.rows();
    const IntegerMatrix I = IntegerMatrix::identity(n);
    const SmithDecomposition s = smith_normal_form(I - tau);
    d->fixed_basis = s.V.columns(s.rank, n);
    d->fixed_coords = s.V_inv.row_range(s.rank, n);
    d->complement = s.V.columns(0, s.rank);
    d->components = tate_h1(tau);
    d->tau = std::move(tau);
    data_ = std::move(d);
  }

  std::size_t dim() const { return data_->tau.rows(); }
  const IntegerMatrix& tau() const { return data_->tau; }
  // Columns: saturated basis of the invariant sublattice.
  const IntegerMatrix& fixed_basis() const { return data_->fixed_basis; }
  std::size_t fixed_rank() const { return data_->fixed_basis.cols(); }
  // Columns completing fixed_basis() to a basis of Z^n.
  const IntegerMatrix& fixed_complement() const { return data_->complement; }
  // ker(id + tau) / im(id - tau), indexing the components of the real locus.
  const ElementaryTwoGroup& component_group() const { return data_->components; }

  IntegerVector apply(const IntegerVector& x) const { return data_->tau * x; }

  bool is_fixed(const IntegerVector& x) const { return apply(x) == x; }

  // Coordinates of an invariant vector in fixed_basis().
  IntegerVector fixed_coordinates(const IntegerVector& x) const {
    if (!is_fixed(x)) throw InvalidInput("vector is not invariant");
    return data_->fixed_coords * x;
  }

  friend bool operator==(const LatticeInvolution& a, const LatticeInvolution& b) {
    return a.data_ == b.data_ || a.tau() == b.tau();
  }

 private:
  struct Data {
    IntegerMatrix tau, fixed_basis, fixed_coords, complement;
    ElementaryTwoGroup components;
  };
  std::shared_ptr<const Data> data_;
};

// Basis (alpha_1..alpha_a, beta_1..beta_s, gamma_{s+1}..gamma_{n-a}) with
// tau alpha = alpha, tau beta_j = alpha_j - beta_j, tau gamma = -gamma.
struct NormalFormBasis {
  std::size_t a = 0;
  std::size_t s = 0;
  IntegerMatrix U;  // columns in the order above

  IntegerVector alpha(std::size_t i) const { return U.column(i); }
  IntegerVector beta(std::size_t j) const { return U.column(a + j); }
  IntegerVector gamma(std::size_t k) const { return U.column(a + s + k); }

  // The matrix of tau in this basis.
  IntegerMatrix normal_form() const {
    const std::size_t n = U.rows();
    IntegerMatrix N(n, n);
    for (std::size_t i = 0; i < a; ++i) N(i, i) = 1;
    for (std::size_t j = 0; j < s; ++j) {
      N(j, a + j) = 1;
      N(a + j, a + j) = -1;
    }
    for (std::size_t k = a + s; k < n; ++k) N(k, k) = -1;
    return N;
  }
};

inline NormalFormBasis normal_form_basis(const LatticeInvolution& L) {
  const std::size_t n = L.dim();
  const IntegerMatrix& tau = L.tau();
  std::vector<IntegerVector> f, y;
  for (std::size_t i = 0; i < L.fixed_rank(); ++i) f.push_back(L.fixed_basis().column(i));
  for (std::size_t i = 0; i < L.fixed_complement().cols(); ++i) y.push_back(L.fixed_complement().column(i));
  const std::size_t a = f.size(), m = y.size();

  // tau y + y is invariant; its class in Lambda^tau / 2 Lambda^tau is the
  // only obstruction to splitting y off. Put that mod 2 matrix in normal form
  // by elementary operations that are mirrored on the bases.
  const IntegerMatrix fixed_coords = [&] {
    const SmithDecomposition s = smith_normal_form(IntegerMatrix::identity(n) - tau);
    return s.V_inv.row_range(s.rank, n);
  }();
  IntegerMatrix coords = fixed_coords;  // rows track changes of f
  auto lifted = [&](std::size_t k) { return coords * add(tau * y[k], y[k]); };
  std::vector<Z2Vector> C(a, Z2Vector(m));
  for (std::size_t k = 0; k < m; ++k) {
    const IntegerVector e = lifted(k);
    for (std::size_t i = 0; i < a; ++i) C[i][k] = static_cast<std::uint8_t>(mod2(e[i]));
  }

  std::size_t t = 0;
  for (; t < std::min(a, m); ++t) {
    std::size_t pi = a, pj = m;
    for (std::size_t i = t; i < a && pi == a; ++i)
      for (std::size_t j = t; j < m; ++j)
        if (C[i][j]) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == a) break;
    if (pi != t) {
      std::swap(C[pi], C[t]);
      std::swap(f[pi], f[t]);
      coords.swap_rows(pi, t);
    }
    if (pj != t) {
      for (auto& row : C) std::swap(row[pj], row[t]);
      std::swap(y[pj], y[t]);
    }
    for (std::size_t i = 0; i < a; ++i)
      if (i != t && C[i][t]) {
        // row_i += row_t  <=>  f_t <- f_t - f_i
        for (std::size_t k = 0; k < m; ++k) C[i][k] ^= C[t][k];
        f[t] = subtract(f[t], f[i]);
        coords.add_row(i, t, 1);
      }
    for (std::size_t k = 0; k < m; ++k)
      if (k != t && C[t][k]) {
        // col_k += col_t  <=>  y_k <- y_k + y_t
        for (std::size_t i = 0; i < a; ++i) C[i][k] ^= C[i][t];
        y[k] = add(y[k], y[t]);
      }
  }
  const std::size_t s = t;

  // Now tau y_k + y_k = f_k (k < s) or 0, modulo 2 Lambda^tau; absorb the
  // even part into y_k.
  const IntegerMatrix F = IntegerMatrix::from_columns(f, n);
  for (std::size_t k = 0; k < m; ++k) {
    IntegerVector e = lifted(k);
    if (k < s) e[k] -= 1;
    for (auto& x : e) x /= 2;
    y[k] = subtract(y[k], F * e);
  }

  NormalFormBasis out;
  out.a = a;
  out.s = s;
  std::vector<IntegerVector> cols = f;
  cols.insert(cols.end(), y.begin(), y.end());
  out.U = IntegerMatrix::from_columns(cols, n);
  return out;
}

inline bool is_anti_invariant(const LatticeInvolution& L, const IntegerMatrix& u) {
  return u.rows() == L.dim() && is_alternating(u) && L.tau().transpose() * u * L.tau() == -u;
}

// Alternating integer form u on the lattice with tau^T u tau = -u.
class AntiInvariantAltForm {
 public:
  AntiInvariantAltForm(const LatticeInvolution& L, IntegerMatrix u) : u_(std::move(u)) {
    if (u_.rows() != L.dim() || !u_.square()) throw InvalidInput("form has the wrong size");
    if (!is_alternating(u_)) throw InvalidInput("form is not alternating");
    if (!(L.tau().transpose() * u_ * L.tau() == -u_)) throw InvalidInput("form is not anti-invariant under tau");
  }
  const IntegerMatrix& matrix() const { return u_; }
  Integer operator()(const IntegerVector& x, const IntegerVector& y) const { return bilinear(u_, x, y); }

 private:
  IntegerMatrix u_;
};

// A map alpha : Lambda -> U(1) with alpha(l + l') = alpha(l) alpha(l') exp(pi i u(l, l')).
// Values are stored as angles q, alpha = exp(pi i q), q taken mod 2.
class UCharacter {
 public:
  UCharacter(IntegerMatrix form, std::vector<Rational> angles) : form_(std::move(form)) {
    if (!is_alternating(form_)) throw InvalidInput("character form is not alternating");
    if (angles.size() != form_.rows()) throw InvalidInput("one angle per basis vector is required");
    for (auto& q : angles) q = reduce_angle(q);
    angles_ = std::move(angles);
  }

  const IntegerMatrix& form() const { return form_; }
  const std::vector<Rational>& angles() const { return angles_; }
  std::size_t dim() const { return angles_.size(); }

  // Angle of alpha(sum c_i e_i) = sum c_i q_i + sum_{i<j} c_i c_j u_ij (mod 2).
  Rational angle(const IntegerVector& c) const {
    if (c.size() != dim()) throw InvalidInput("vector of wrong length");
    Rational q = 0;
    Integer cross = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      q += Rational(c[i]) * angles_[i];
      for (std::size_t j = i + 1; j < c.size(); ++j) cross += c[i] * c[j] * form_(i, j);
    }
    return reduce_angle(q + Rational(cross));
  }

  friend bool operator==(const UCharacter& a, const UCharacter& b) {
    return a.form_ == b.form_ && a.angles_ == b.angles_;
  }

 private:
  IntegerMatrix form_;
  std::vector<Rational> angles_;
};

// The u-character that takes the given angles on the columns of `basis`.
inline UCharacter character_from_basis(const IntegerMatrix& u, const IntegerMatrix& basis,
                                       const std::vector<Rational>& basis_angles) {
  const UCharacter in_basis(basis.transpose() * u * basis, basis_angles);
  const IntegerMatrix inv = inverse_unimodular(basis);
  std::vector<Rational> angles;
  for (std::size_t i = 0; i < u.rows(); ++i) angles.push_back(in_basis.angle(inv.column(i)));
  return UCharacter(u, std::move(angles));
}

// alpha(tau l) = conj(alpha(l)); the product of the two sides is a character,
// so checking basis vectors suffices.
inline bool is_real_ucharacter(const LatticeInvolution& L, const UCharacter& alpha) {
  if (!is_anti_invariant(L, alpha.form())) throw InvalidInput("character form is not anti-invariant");
  for (std::size_t i = 0; i < L.dim(); ++i) {
    const Rational total = alpha.angles()[i] + alpha.angle(L.tau().column(i));
    if (reduce_angle(total) != 0) return false;
  }
  return true;
}

// One Real u-character per component of the space of Real u-characters,
// 2^(a-s) of them, indexed by the free signs on unpaired invariant vectors.
inline std::vector<UCharacter> real_ucharacter_components(const LatticeInvolution& L, const AntiInvariantAltForm& u) {
  const NormalFormBasis cb = normal_form_basis(L);
  const std::size_t n = L.dim();
  std::vector<UCharacter> out;
  for (const Z2Vector& signs : all_z2_vectors(cb.a - cb.s)) {
    std::vector<Rational> angles(n, Rational(0));
    for (std::size_t j = 0; j < cb.s; ++j) angles[j] = Rational(u(cb.alpha(j), cb.beta(j)));
    for (std::size_t i = cb.s; i < cb.a; ++i) angles[i] = signs[i - cb.s];
    out.push_back(character_from_basis(u.matrix(), cb.U, angles));
  }
  return out;
}

// Class of l -> alpha(l) alpha(tau l) in the group of tau-invariant
// characters modulo norms, as coordinates in ker(id + tau^T)/im(id - tau^T).
// Always zero; exposed so that this can be checked.
inline Z2Vector obstruction_class(const LatticeInvolution& L, const UCharacter& alpha) {
  if (!is_anti_invariant(L, alpha.form())) throw InvalidInput("character form is not anti-invariant");
  const std::size_t n = L.dim();
  std::vector<Rational> rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = reduce_angle(alpha.angles()[i] + alpha.angle(L.tau().column(i)));
  const IntegerMatrix tt = L.tau().transpose();
  IntegerVector boundary(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational x = -rho[i];
    for (std::size_t j = 0; j < n; ++j) x += Rational(tt(i, j)) * rho[j];
    if (!is_integer(x) || mod2(boost::multiprecision::numerator(x)) != 0)
      throw std::logic_error("invariant character has a non-integral coboundary");
    boundary[i] = boost::multiprecision::numerator(x) / 2;
  }
  return tate_h1(tt).reduce(boundary);
}

inline Z2Vector obstruction_class(const LatticeInvolution& L, const AntiInvariantAltForm& u) {
  return obstruction_class(L, UCharacter(u.matrix(), std::vector<Rational>(L.dim(), Rational(0))));
}

// f_u(l + tau l) = u(l, tau l) mod 2 on the image of id + tau.
inline int quadratic_datum(const LatticeInvolution& L, const IntegerMatrix& u, const IntegerVector& x) {
  const IntegerMatrix I = IntegerMatrix::identity(L.dim());
  const auto l = lattice_solve(I + L.tau(), x);
  if (!l) throw InvalidInput("vector is not in the image of id + tau");
  return mod2(bilinear(u, *l, L.apply(*l)));
}

inline int quadratic_datum(const LatticeInvolution& L, const AntiInvariantAltForm& u, const IntegerVector& x) {
  return quadratic_datum(L, u.matrix(), x);
}

// A component of the real locus: the coset (1/2) m + V^tau, m in ker(id + tau).
struct FixedComponentIndex {
  Z2Vector coords;        // in the component group
  IntegerVector doubled;  // m = 2 mu

  friend bool operator==(const FixedComponentIndex& a, const FixedComponentIndex& b) { return a.coords == b.coords; }
};

inline std::vector<FixedComponentIndex> fixed_components(const LatticeInvolution& L) {
  std::vector<FixedComponentIndex> out;
  const ElementaryTwoGroup& G = L.component_group();
  for (const Z2Vector& z : all_z2_vectors(G.rank())) out.push_back({z, G.lift(z)});
  return out;
}

inline FixedComponentIndex component_of(const LatticeInvolution& L, const IntegerVector& doubled) {
  const ElementaryTwoGroup& G = L.component_group();
  const Z2Vector z = G.reduce(doubled);
  return {z, G.lift(z)};
}

inline std::size_t component_position(const FixedComponentIndex& c) {
  std::size_t p = 0;
  for (auto b : c.coords) p = 2 * p + b;
  return p;
}

// Convert a mod 2 functional on Z^n to its values on fixed_basis().
inline Z2Vector restrict_to_fixed(const LatticeInvolution& L, const Z2Vector& ambient) {
  if (ambient.size() != L.dim()) throw InvalidInput("functional of wrong length");
  Z2Vector w(L.fixed_rank());
  for (std::size_t j = 0; j < w.size(); ++j) {
    int s = 0;
    for (std::size_t i = 0; i < L.dim(); ++i) s ^= ambient[i] & mod2(L.fixed_basis()(i, j));
    w[j] = static_cast<std::uint8_t>(s);
  }
  return w;
}

inline int pair_mod2(const Z2Vector& w, const IntegerVector& coords) {
  int s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s ^= w[i] & mod2(coords[i]);
  return s;
}

class RealLineBundleClass;
inline RealLineBundleClass make_class(const LatticeInvolution& L, const IntegerMatrix& u, const Z2Vector& w0);

// Topological type of a Real line bundle on the real torus.
class RealLineBundleClass {
 public:
  const LatticeInvolution& lattice() const { return lattice_; }
  const IntegerMatrix& form() const { return u_; }
  // Values of w0 on lattice().fixed_basis().
  const Z2Vector& w0() const { return w0_; }

  int w0_at(const IntegerVector& invariant) const {
    return pair_mod2(w0_, lattice_.fixed_coordinates(invariant));
  }

  friend bool operator==(const RealLineBundleClass& a, const RealLineBundleClass& b) {
    return a.lattice_ == b.lattice_ && a.u_ == b.u_ && a.w0_ == b.w0_;
  }

  friend RealLineBundleClass make_class(const LatticeInvolution& L, const IntegerMatrix& u, const Z2Vector& w0);

 private:
  RealLineBundleClass(LatticeInvolution L, IntegerMatrix u, Z2Vector w0)
      : lattice_(std::move(L)), u_(std::move(u)), w0_(std::move(w0)) {}
  LatticeInvolution lattice_;
  IntegerMatrix u_;
  Z2Vector w0_;
};

// Accepts (u, w0) exactly when u is alternating and anti-invariant and w0
// agrees with the quadratic datum of u on each generator (id + tau) e_i.
inline RealLineBundleClass make_class(const LatticeInvolution& L, const IntegerMatrix& u, const Z2Vector& w0) {
  const AntiInvariantAltForm form(L, u);
  if (w0.size() != L.fixed_rank()) throw InvalidInput("w0 needs one value per invariant basis vector");
  for (auto b : w0)
    if (b > 1) throw InvalidInput("w0 values must be 0 or 1");
  for (std::size_t i = 0; i < L.dim(); ++i) {
    const IntegerVector e = unit_vector(L.dim(), i);
    const IntegerVector x = add(e, L.apply(e));
    const int expected = mod2(form(e, L.apply(e)));
    if (pair_mod2(w0, L.fixed_coordinates(x)) != expected)
      throw InvalidInput("w0 does not extend the quadratic datum of u on (id + tau) e_" + std::to_string(i + 1));
  }
  return RealLineBundleClass(L, u, w0);
}

inline RealLineBundleClass make_class_from_ambient(const LatticeInvolution& L, const IntegerMatrix& u,
                                                   const Z2Vector& ambient_w0) {
  return make_class(L, u, restrict_to_fixed(L, ambient_w0));
}

inline RealLineBundleClass class_add(const RealLineBundleClass& x, const RealLineBundleClass& y) {
  if (!(x.lattice() == y.lattice())) throw InvalidInput("classes live on different lattices");
  Z2Vector w = x.w0();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= y.w0()[i];
  return make_class(x.lattice(), x.form() + y.form(), w);
}

inline RealLineBundleClass class_scale(const RealLineBundleClass& x, long long k) {
  Z2Vector w = x.w0();
  for (auto& b : w) b = static_cast<std::uint8_t>(b & (k & 1));
  return make_class(x.lattice(), Integer(k) * x.form(), w);
}

// w restricted to each fixed component: w0 + u(2 mu, .) on the invariant lattice.
class SWFunction {
 public:
  explicit SWFunction(const RealLineBundleClass& c) : lattice_(c.lattice()), components_(fixed_components(c.lattice())) {
    const IntegerMatrix& F = lattice_.fixed_basis();
    for (const auto& comp : components_) {
      Z2Vector row = c.w0();
      for (std::size_t j = 0; j < row.size(); ++j)
        row[j] = static_cast<std::uint8_t>(row[j] ^ mod2(bilinear(c.form(), comp.doubled, F.column(j))));
      table_.push_back(std::move(row));
    }
  }

  const std::vector<FixedComponentIndex>& components() const { return components_; }
  // Values on lattice().fixed_basis(), one row per component.
  const Z2Vector& at(std::size_t position) const { return table_.at(position); }
  const Z2Vector& at(const FixedComponentIndex& c) const { return table_.at(component_position(c)); }
  int value(const FixedComponentIndex& c, const IntegerVector& invariant) const {
    return pair_mod2(at(c), lattice_.fixed_coordinates(invariant));
  }
  const LatticeInvolution& lattice() const { return lattice_; }

 private:
  LatticeInvolution lattice_;
  std::vector<FixedComponentIndex> components_;
  std::vector<Z2Vector> table_;
};

inline SWFunction sw_function(const RealLineBundleClass& c) { return SWFunction(c); }

// Translate a class by a point of the given component: same u, w0 replaced by
// its value on that component.
inline RealLineBundleClass translate_class(const RealLineBundleClass& c, const FixedComponentIndex& where) {
  return make_class(c.lattice(), c.form(), sw_function(c).at(where));
}

// The class of the Real bundle built from a Real u-character: c1 = u and w0
// is the sign of the character on the invariant lattice.
inline RealLineBundleClass class_from_real_character(const LatticeInvolution& L, const UCharacter& alpha) {
  if (!is_real_ucharacter(L, alpha)) throw InvalidInput("character is not Real");
  Z2Vector w0(L.fixed_rank());
  for (std::size_t j = 0; j < w0.size(); ++j) {
    const Rational q = alpha.angle(L.fixed_basis().column(j));
    if (q != 0 && q != 1) throw std::logic_error("Real character is not a sign on invariant vectors");
    w0[j] = static_cast<std::uint8_t>(q == 1);
  }
  return make_class(L, alpha.form(), w0);
}

// All classes with first Chern class u, one per Real character component.
inline std::vector<RealLineBundleClass> classes_with_form(const LatticeInvolution& L, const AntiInvariantAltForm& u) {
  std::vector<RealLineBundleClass> out;
  for (const auto& alpha : real_ucharacter_components(L, u)) out.push_back(class_from_real_character(L, alpha));
  return out;
}

}  // namespace realbundles
