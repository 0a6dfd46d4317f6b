#pragma once

// Mod 2 characteristic class bookkeeping for the localization of
// Stiefel-Whitney numbers of a Real bundle to the fixed locus of the
// involution.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "klein_surface.hpp"

namespace realbundles {

// Polynomial generators with their degrees; products above `truncation`
// are dropped.
struct GradedRing {
  std::vector<std::string> names;
  std::vector<int> degrees;
  int truncation = 8;

  std::size_t index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    throw InvalidInput("unknown generator " + name);
  }
};

inline bool operator==(const GradedRing& a, const GradedRing& b) {
  return a.names == b.names && a.degrees == b.degrees && a.truncation == b.truncation;
}

using Exponents = std::vector<int>;

// Element of the truncated polynomial ring over Z/2, kept as the set of
// monomials with coefficient 1.
class GradedZ2Poly {
 public:
  explicit GradedZ2Poly(std::shared_ptr<const GradedRing> ring) : ring_(std::move(ring)) {}

  static GradedZ2Poly one(std::shared_ptr<const GradedRing> ring) {
    GradedZ2Poly p(ring);
    p.terms_.insert(Exponents(ring->names.size(), 0));
    return p;
  }
  static GradedZ2Poly generator(std::shared_ptr<const GradedRing> ring, std::size_t i) {
    GradedZ2Poly p(ring);
    Exponents e(ring->names.size(), 0);
    e.at(i) = 1;
    p.add_term(e);
    return p;
  }
  static GradedZ2Poly generator(std::shared_ptr<const GradedRing> ring, const std::string& name) {
    const std::size_t i = ring->index(name);
    return generator(std::move(ring), i);
  }

  const std::shared_ptr<const GradedRing>& ring() const { return ring_; }
  const std::set<Exponents>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree_of(const Exponents& e) const {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * ring_->degrees[i];
    return d;
  }

  // Toggles a monomial (adding it twice cancels); drops it above the truncation.
  void add_term(const Exponents& e) {
    if (e.size() != ring_->names.size()) throw InvalidInput("monomial of wrong length");
    if (degree_of(e) > ring_->truncation) return;
    if (!terms_.erase(e)) terms_.insert(e);
  }

  GradedZ2Poly part(int degree) const {
    GradedZ2Poly p(ring_);
    for (const auto& e : terms_)
      if (degree_of(e) == degree) p.terms_.insert(e);
    return p;
  }

  bool coefficient(const Exponents& e) const { return terms_.count(e) != 0; }

  friend GradedZ2Poly operator+(const GradedZ2Poly& x, const GradedZ2Poly& y) {
    same_ring(x, y);
    GradedZ2Poly p = x;
    for (const auto& e : y.terms_) p.add_term(e);
    return p;
  }
  friend GradedZ2Poly operator*(const GradedZ2Poly& x, const GradedZ2Poly& y) {
    same_ring(x, y);
    GradedZ2Poly p(x.ring_);
    for (const auto& a : x.terms_)
      for (const auto& b : y.terms_) {
        Exponents e = a;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += b[i];
        p.add_term(e);
      }
    return p;
  }
  friend bool operator==(const GradedZ2Poly& x, const GradedZ2Poly& y) {
    return *x.ring_ == *y.ring_ && x.terms_ == y.terms_;
  }

  GradedZ2Poly pow(int k) const {
    GradedZ2Poly p = one(ring_);
    for (int i = 0; i < k; ++i) p = p * *this;
    return p;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& e : terms_) {
      if (!s.empty()) s += " + ";
      std::string m;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!m.empty()) m += "*";
        m += ring_->names[i];
        if (e[i] > 1) m += "^" + std::to_string(e[i]);
      }
      s += m.empty() ? "1" : m;
    }
    return s;
  }

 private:
  static void same_ring(const GradedZ2Poly& x, const GradedZ2Poly& y) {
    if (!(x.ring_ == y.ring_ || *x.ring_ == *y.ring_)) throw InvalidInput("polynomials live in different rings");
  }
  std::shared_ptr<const GradedRing> ring_;
  std::set<Exponents> terms_;
};

// (1 + x)^{-1} = 1 + x + x^2 + ... in characteristic 2, up to the truncation.
inline GradedZ2Poly inverse_total_class(const GradedZ2Poly& w) {
  const auto& ring = w.ring();
  const Exponents zero(ring->names.size(), 0);
  if (!w.coefficient(zero)) throw InvalidInput("total class must have constant term 1");
  for (int d : ring->degrees)
    if (d < 1) throw InvalidInput("generators must have positive degree");
  GradedZ2Poly rest = w + GradedZ2Poly::one(ring);
  GradedZ2Poly sum = GradedZ2Poly::one(ring), power = GradedZ2Poly::one(ring);
  for (int k = 1; k <= ring->truncation; ++k) {
    power = power * rest;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum;
}

// C(m, k) mod 2 by Lucas: odd iff the bits of k are among those of m.
inline int binomial_mod2(long long m, long long k) {
  if (k < 0 || m < 0 || k > m) return 0;
  return (k & ~m) == 0 ? 1 : 0;
}

// Total class of F (x) chi for F of rank r with classes w_F[0..r-1] = w_1..w_r
// and x = w_1(chi): sum_j w_j(F) (1 + x)^{r - j}.
inline GradedZ2Poly tensor_line_expansion(int r, const std::vector<GradedZ2Poly>& w_F, const GradedZ2Poly& x) {
  if (w_F.size() != static_cast<std::size_t>(r)) throw InvalidInput("need w_1..w_r of F");
  const auto& ring = x.ring();
  GradedZ2Poly total(ring);
  for (int j = 0; j <= r; ++j) {
    const GradedZ2Poly wj = j == 0 ? GradedZ2Poly::one(ring) : w_F[static_cast<std::size_t>(j - 1)];
    for (int m = 0; m <= r - j; ++m)
      if (binomial_mod2(r - j, m)) total = total + wj * x.pow(m);
  }
  return total;
}

struct LocalizationInput {
  int n = 2;  // dimension of the manifold
  int k = 1;  // codimension of the fixed locus
  int r = 1;  // rank of the Real bundle
  std::shared_ptr<const GradedRing> ring;
  std::vector<GradedZ2Poly> w_E;  // w_1..w_r of the invariant part over the fixed locus
  std::vector<GradedZ2Poly> w_N;  // w_1..w_k of the normal bundle
  std::size_t chi = 0;            // generator standing for w_1 of the tautological line
  std::vector<int> monomial;      // exponents k_i of w_{2i}, i = 1, 2, ...
};

// Ring with generators w1(E)..wr(E), w1(N)..wk(N) and x, and the monomial as given.
inline LocalizationInput standard_localization_input(int n, int k, int r, std::vector<int> monomial, int truncation = 8) {
  auto ring = std::make_shared<GradedRing>();
  ring->truncation = truncation;
  for (int i = 1; i <= r; ++i) {
    ring->names.push_back("w" + std::to_string(i) + "(E)");
    ring->degrees.push_back(i);
  }
  for (int i = 1; i <= k; ++i) {
    ring->names.push_back("w" + std::to_string(i) + "(N)");
    ring->degrees.push_back(i);
  }
  ring->names.push_back("x");
  ring->degrees.push_back(1);
  LocalizationInput in;
  in.n = n;
  in.k = k;
  in.r = r;
  in.ring = ring;
  for (int i = 0; i < r; ++i) in.w_E.push_back(GradedZ2Poly::generator(ring, static_cast<std::size_t>(i)));
  for (int i = 0; i < k; ++i) in.w_N.push_back(GradedZ2Poly::generator(ring, static_cast<std::size_t>(r + i)));
  in.chi = static_cast<std::size_t>(r + k);
  in.monomial = std::move(monomial);
  return in;
}

// Pushes the monomial in the classes of E (+) E (x) chi on the projectivised
// normal bundle down to the fixed locus, using pi_*(x^{k+l}) = s_l(N (+) R).
inline GradedZ2Poly localize(const LocalizationInput& in) {
  if (in.n % 2 != 0) throw InvalidInput("dimension must be even");
  if (in.k < 1 || in.k > in.n) throw InvalidInput("codimension out of range");
  if (in.w_E.size() != static_cast<std::size_t>(in.r)) throw InvalidInput("need w_1..w_r of the bundle");
  if (in.w_N.size() > static_cast<std::size_t>(in.k)) throw InvalidInput("normal bundle has classes above its rank");
  int degree = 0;
  for (std::size_t i = 0; i < in.monomial.size(); ++i) degree += 2 * static_cast<int>(i + 1) * in.monomial[i];
  if (degree != in.n) throw InvalidInput("monomial degree differs from the dimension");
  if (in.ring->truncation < in.n) throw InvalidInput("truncation below the dimension");

  const auto& ring = in.ring;
  const GradedZ2Poly x = GradedZ2Poly::generator(ring, in.chi);
  GradedZ2Poly wE = GradedZ2Poly::one(ring);
  for (const auto& c : in.w_E) wE = wE + c;
  const GradedZ2Poly total = wE * tensor_line_expansion(in.r, in.w_E, x);

  GradedZ2Poly product = GradedZ2Poly::one(ring);
  for (std::size_t i = 0; i < in.monomial.size(); ++i)
    product = product * total.part(2 * static_cast<int>(i + 1)).pow(in.monomial[i]);

  GradedZ2Poly wN = GradedZ2Poly::one(ring);
  for (const auto& c : in.w_N) wN = wN + c;
  const GradedZ2Poly segre = inverse_total_class(wN);

  GradedZ2Poly out(ring);
  for (const auto& e : product.terms()) {
    const int p = e[in.chi];
    if (p < in.k) continue;
    Exponents rest = e;
    rest[in.chi] = 0;
    GradedZ2Poly coeff(ring);
    coeff.add_term(rest);
    out = out + coeff * segre.part(p - in.k);
  }
  return out;
}

// Evaluation on a fixed locus made of circles: a degree-one class pairs with
// each circle through the given values of the degree-one generators.
inline int pair_on_circles(const GradedZ2Poly& c, const std::vector<std::map<std::size_t, int>>& circle_values) {
  int s = 0;
  for (const auto& e : c.terms()) {
    if (c.degree_of(e) != 1) throw InvalidInput("only degree one classes pair with circles");
    std::size_t gen = 0;
    while (e[gen] == 0) ++gen;
    for (const auto& values : circle_values) {
      const auto it = values.find(gen);
      if (it != values.end()) s ^= it->second & 1;
    }
  }
  return s;
}

// Pairing with a finite set of points: only the constant term survives.
inline int pair_on_points(const GradedZ2Poly& c, long long points) {
  for (const auto& e : c.terms())
    if (c.degree_of(e) != 0) throw InvalidInput("only degree zero classes pair with points");
  return c.terms().empty() ? 0 : static_cast<int>(points & 1);
}

// Parity of the degree predicted by localization for a rank r bundle with
// mod 2 degrees w on the real circles (normal bundles of circles are trivial).
inline int localized_degree_parity(int r, const Z2Vector& w) {
  const LocalizationInput in = standard_localization_input(2, 1, r, {1});
  const GradedZ2Poly local = localize(in);
  std::vector<std::map<std::size_t, int>> circles;
  for (auto wi : w) circles.push_back({{0, wi}, {static_cast<std::size_t>(r), 0}});
  return pair_on_circles(local, circles);
}

// Degree parity of a curve class against the localized prediction for a
// bundle of rank r with the same circle data.
inline bool degree_parity_check(const CurveBundleClass& c, int r = 1) {
  return localized_degree_parity(r, c.w) == static_cast<int>(((c.d % 2) + 2) % 2);
}

}  // namespace realbundles
