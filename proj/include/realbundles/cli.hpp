#pragma once

// Command layer shared by the realbundles executable and its tests: parses a
// JSON configuration, runs one command and renders a deterministic report.

#include <deque>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holonomy.hpp"
#include "orientability.hpp"
#include "random.hpp"
#include "sw_localization.hpp"

namespace realbundles::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kPropertyFailure = 1, kInvalidInput = 2 };

struct RunConfig {
  std::string command;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::string format = "tsv";
};

struct Table {
  std::string name;
  std::vector<std::string> columns;  // the last column is always "provenance"
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  Json input;
  std::uint64_t seed = 0;
  std::deque<Table> tables;  // deque: Builder hands out references that must survive later tables
  std::vector<std::string> provenance_tags;
  int exit_code = kOk;
};

// What each provenance tag stands for.
inline const std::map<std::string, std::string>& provenance_glossary() {
  static const std::map<std::string, std::string> g = {
      {"lattice-normal-form", "normal form of a lattice involution as sums of trivial, sign and regular blocks"},
      {"fixed-components", "components of the real torus are indexed by ker(1+tau)/im(1-tau)"},
      {"class-pairs", "Real line bundles up to isomorphism are pairs (u, w0) with w0 extending f_u"},
      {"difference-formula", "on the component of mu, w equals w0 + u(2 mu, .)"},
      {"real-character-sign", "w0 of the bundle of a Real character is its sign on invariant vectors"},
      {"obstruction-vanishes", "the class of l -> alpha(l) alpha(tau l) modulo norms is trivial"},
      {"curve-topology", "real curves with real points have types (g, r, a) subject to the Klein conditions"},
      {"circle-span", "real circles and norms span the invariant homology"},
      {"curve-parity", "a Real line bundle of degree d has sum of circle degrees = d mod 2"},
      {"theta-circle-rule", "q_kappa([C_i]) = w_i(kappa) + 1 for Real theta characteristics"},
      {"p0-theta-class", "the Real theta divisor class of (g-1) p0 takes 1 on circle duals away from p0 and g mod 2 on p0"},
      {"index-determinant", "determinant of the index bundle is a tensor product of translated theta bundles"},
      {"orientability-criterion", "orientable iff the fiber rank is even and w1 of the index determinant vanishes"},
      {"stable-range", "degree bounds under which the Abel-Jacobi map is a bundle and the Quot scheme smooth"},
      {"holonomy-closed-form", "parallel transport of d - pi i u(v, dv) along a segment is exp(pi i u(v0, w))"},
      {"holonomy-ode", "numerical RK4 transport, 10^4 steps per unit parameter"},
      {"localization", "Stiefel-Whitney numbers localize to the fixed locus via the projectivised normal bundle"},
      {"computed", "direct computation, no external claim"},
  };
  return g;
}

namespace detail {

inline std::string str(long long x) { return std::to_string(x); }
inline std::string str(const Integer& x) { return x.str(); }
inline std::string str(const Rational& x) { return x.str(); }
inline std::string str(bool b) { return b ? "true" : "false"; }

inline std::string fixed(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x == 0 ? 0.0 : x);
  return buf;
}
inline std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}
inline std::string complex_str(const Complex& z) {
  // Rounded so that 1e-16 noise never changes the bytes.
  auto r = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
  return fixed(r(z.real())) + (r(z.imag()) < 0 ? "" : "+") + fixed(r(z.imag())) + "i";
}

inline std::string bits(const Z2Vector& z) {
  std::string s;
  for (auto b : z) s += b ? '1' : '0';
  return s.empty() ? "-" : s;
}

inline std::string half_vector(const IntegerVector& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + str(Rational(m[i], 2));
  return s + ")";
}

inline const Json& require(const Json& p, const char* key) {
  if (!p.contains(key)) throw InvalidInput(std::string("missing parameter '") + key + "'");
  return p.at(key);
}

inline long long as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline IntegerMatrix as_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of rows");
  std::vector<std::vector<long long>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw InvalidInput(std::string(what) + " must be an array of rows");
    rows.emplace_back();
    for (const auto& x : row) rows.back().push_back(as_int(x, what));
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw InvalidInput(std::string(what) + " must be square");
  return IntegerMatrix::from_rows(rows);
}

inline IntegerVector as_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  IntegerVector v;
  for (const auto& x : j) v.emplace_back(as_int(x, what));
  return v;
}

inline Z2Vector as_bits(const Json& j, const char* what) {
  Z2Vector z;
  for (const auto& x : as_vector(j, what)) {
    if (x != 0 && x != 1) throw InvalidInput(std::string(what) + " entries must be 0 or 1");
    z.push_back(static_cast<std::uint8_t>(x));
  }
  return z;
}

// Integers or strings "p/q".
inline Rational as_rational(const Json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(s));
      const Integer den(s.substr(slash + 1));
      if (den == 0) throw InvalidInput(std::string(what) + " has zero denominator");
      return Rational(Integer(s.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
      throw InvalidInput(std::string(what) + " is not a rational number: " + s);
    }
  }
  throw InvalidInput(std::string(what) + " must be an integer or a string p/q");
}

inline std::vector<Rational> as_rationals(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(as_rational(x, what));
  return v;
}

inline RealVector as_real_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  RealVector v;
  for (const auto& x : j) {
    if (x.is_number()) v.push_back(x.get<double>());
    else v.push_back(to_double(as_rational(x, what)));
  }
  return v;
}

inline KleinType as_type(const Json& p) {
  return KleinType::make(static_cast<int>(as_int(require(p, "g"), "g")), static_cast<int>(as_int(require(p, "r"), "r")),
                         static_cast<int>(as_int(require(p, "a"), "a")));
}

class Builder {
 public:
  explicit Builder(Report& r) : r_(r) {}
  Table& table(std::string name, std::vector<std::string> columns) {
    columns.push_back("provenance");
    r_.tables.push_back({std::move(name), std::move(columns), {}});
    return r_.tables.back();
  }
  void row(Table& t, std::vector<std::string> cells, const std::string& tag) {
    if (!provenance_glossary().count(tag)) throw std::logic_error("unknown provenance tag " + tag);
    cells.push_back(tag);
    if (cells.size() != t.columns.size()) throw std::logic_error("row width differs from header in " + t.name);
    t.rows.push_back(std::move(cells));
    if (std::find(r_.provenance_tags.begin(), r_.provenance_tags.end(), tag) == r_.provenance_tags.end())
      r_.provenance_tags.push_back(tag);
  }

 private:
  Report& r_;
};

}  // namespace detail

// ---------------------------------------------------------------------------

inline void classify_torus(const Json& p, Report& out) {
  using namespace detail;
  Builder b(out);
  const LatticeInvolution L(as_matrix(require(p, "tau"), "tau"));
  const NormalFormBasis cb = normal_form_basis(L);
  const std::size_t n = L.dim();

  auto& lat = b.table("lattice", {"n", "a", "s", "h1_rank", "h2_rank", "components"});
  b.row(lat,
        {str((long long)n), str((long long)cb.a), str((long long)cb.s), str((long long)L.component_group().rank()),
         str((long long)tate_h2(L.tau()).rank()), str((long long)(1LL << L.component_group().rank()))},
        "lattice-normal-form");

  auto& basis = b.table("normal_basis", {"vector", "coordinates", "image"});
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = i < cb.a ? "alpha" + str((long long)i + 1)
                        : i < cb.a + cb.s ? "beta" + str((long long)(i - cb.a) + 1)
                                          : "gamma" + str((long long)(i - cb.a) + 1);
    const IntegerVector v = cb.U.column(i);
    b.row(basis, {label, to_string(v), to_string(L.apply(v))}, "lattice-normal-form");
  }

  auto& fixed_tbl = b.table("invariant_basis", {"index", "vector"});
  for (std::size_t j = 0; j < L.fixed_rank(); ++j)
    b.row(fixed_tbl, {str((long long)j), to_string(L.fixed_basis().column(j))}, "computed");

  auto& comps = b.table("components", {"index", "coords", "mu"});
  for (const auto& c : fixed_components(L))
    b.row(comps, {"T" + str((long long)component_position(c)), bits(c.coords), half_vector(c.doubled)},
          "fixed-components");

  if (!p.contains("u")) return;
  const AntiInvariantAltForm u(L, as_matrix(p.at("u"), "u"));

  auto& obs = b.table("obstruction", {"character", "class"});
  {
    const UCharacter alpha = p.contains("angles") ? UCharacter(u.matrix(), as_rationals(p.at("angles"), "angles"))
                                                  : UCharacter(u.matrix(), std::vector<Rational>(n, Rational(0)));
    const Z2Vector cls = obstruction_class(L, alpha);
    if (std::any_of(cls.begin(), cls.end(), [](auto x) { return x != 0; })) out.exit_code = kPropertyFailure;
    b.row(obs, {p.contains("angles") ? "given" : "zero angles", bits(cls)}, "obstruction-vanishes");
  }

  auto& fiber = b.table("classes_with_form", {"index", "w0"});
  long long k = 0;
  for (const auto& c : classes_with_form(L, u)) b.row(fiber, {str(k++), bits(c.w0())}, "class-pairs");

  std::optional<RealLineBundleClass> cls;
  std::string source;
  if (p.contains("w0")) {
    cls = make_class_from_ambient(L, u.matrix(), as_bits(p.at("w0"), "w0"));
    source = "class-pairs";
  } else if (p.contains("angles")) {
    const UCharacter alpha(u.matrix(), as_rationals(p.at("angles"), "angles"));
    if (is_real_ucharacter(L, alpha)) {
      cls = class_from_real_character(L, alpha);
      source = "real-character-sign";
    }
  }
  if (!cls) return;
  auto& cl = b.table("class", {"u", "w0"});
  b.row(cl, {u.matrix().str(), bits(cls->w0())}, source);
  auto& sw = b.table("sw_table", {"component", "coords", "w_on_invariant_basis"});
  const SWFunction f = sw_function(*cls);
  for (const auto& c : f.components())
    b.row(sw, {"T" + str((long long)component_position(c)), bits(c.coords), bits(f.at(c))}, "difference-formula");
}

inline void classify_curve(const Json& p, Report& out) {
  using namespace detail;
  Builder b(out);
  const KleinType t = as_type(p);
  const PicTorusData pic = pic_torus(t);
  const NormalFormBasis cb = normal_form_basis(pic.lattice);
  auto& type = b.table("type", {"g", "r", "a", "s"});
  b.row(type, {str((long long)t.g), str((long long)t.r), str((long long)t.a), str((long long)t.s())}, "curve-topology");

  auto& tor = b.table("picard_torus",
                      {"rank", "invariant_rank", "regular_blocks", "components", "expected_components"});
  b.row(tor,
        {str((long long)pic.lattice.dim()), str((long long)cb.a), str((long long)cb.s),
         str((long long)pic.component_count()), str(1LL << (t.r - 1))},
        "fixed-components");
  if (pic.component_count() != (std::size_t{1} << (t.r - 1))) out.exit_code = kPropertyFailure;

  auto& circles = b.table("circles", {"circle", "homology", "dual"});
  for (std::size_t i = 0; i < pic.circle_duals.size(); ++i)
    b.row(circles, {"C" + str((long long)i + 1), to_string(pic.surface.circles[i]), to_string(pic.circle_duals[i])},
          "circle-span");

  const CircleSpanReport span = verify_circle_span(t);
  auto& sp = b.table("circle_span", {"spans_invariants", "relations", "intersection", "parity"});
  b.row(sp, {str(span.spans_invariants), str(span.relations_ok), str(span.intersection_ok), str(span.parity_ok)},
        "circle-span");
  if (!span.ok()) out.exit_code = kPropertyFailure;

  if (p.contains("d")) {
    const long long d = as_int(p.at("d"), "d");
    const Z2Vector w = as_bits(require(p, "w"), "w");
    const CurveBundleClass c = validate_curve_class(t, d, w);
    auto& cc = b.table("curve_class", {"d", "w", "localized_parity_check"});
    const bool ok = degree_parity_check(c);
    if (!ok) out.exit_code = kPropertyFailure;
    b.row(cc, {str(c.d), bits(c.w), str(ok)}, "curve-parity");
  }
}

inline void theta_table(const Json& p, Report& out) {
  using namespace detail;
  Builder b(out);
  const KleinType t = as_type(p);
  if (t.g > 8) throw InvalidInput("theta-table enumerates 2^(2g) forms; use g <= 8");
  const PicTorusData pic = pic_torus(t);
  const BoundaryCensus census = realizable_boundary_data(t);

  auto& cnt = b.table("counts", {"components", "real_theta_per_component", "real_refinements", "all_refinements"});
  b.row(cnt,
        {str((long long)pic.component_count()), str((long long)theta_chars_per_component(t.g)),
         str((long long)census.real_total), str(1LL << (2 * t.g))},
        "theta-circle-rule");

  auto& bd = b.table("boundary", {"w", "boundary_q", "parity_ok", "real_count", "all_count"});
  for (const auto& [bv, count] : census.all) {
    Z2Vector w = bv;
    int sum = 0;
    for (auto& x : w) {
      x ^= 1;
      sum ^= x;
    }
    const auto it = census.real.find(bv);
    const std::size_t real = it == census.real.end() ? 0 : it->second;
    b.row(bd,
          {bits(w), bits(bv), str(sum == ((t.g - 1) & 1)), str((long long)real), str((long long)count)},
          "theta-circle-rule");
    if (real > 0 && sum != ((t.g - 1) & 1)) out.exit_code = kPropertyFailure;
  }

  auto& th = b.table("p0_theta", {"p0_circle", "component", "w_on_circle_duals"});
  for (std::size_t i0 = 0; i0 < static_cast<std::size_t>(t.r); ++i0) {
    const RealLineBundleClass cls = theta_class_p0(pic, i0);
    for (const auto& c : fixed_components(pic.lattice)) {
      Z2Vector vals;
      for (int v : circle_values(pic, cls, c)) vals.push_back(static_cast<std::uint8_t>(v));
      b.row(th, {"C" + str((long long)i0 + 1), "T" + str((long long)component_position(c)), bits(vals)},
            component_position(c) == 0 ? "p0-theta-class" : "difference-formula");
    }
  }
}

inline QuotSetup parse_setup(const Json& p, long long d) {
  using namespace detail;
  QuotSetup s;
  s.type = as_type(p);
  s.r0 = static_cast<int>(p.contains("r0") ? as_int(p.at("r0"), "r0") : 1);
  s.e0 = p.contains("e0") ? as_int(p.at("e0"), "e0") : 0;
  s.mu_max = p.contains("mu_max") ? as_rational(p.at("mu_max"), "mu_max") : Rational(s.e0, s.r0);
  s.d = d;
  s.p0_circle = static_cast<std::size_t>(p.contains("p0_circle") ? as_int(p.at("p0_circle"), "p0_circle") - 1 : 0);
  if (p.contains("det_component")) s.det_component = as_bits(p.at("det_component"), "det_component");
  return s;
}

inline void orientability(const Json& p, Report& out) {
  using namespace detail;
  Builder b(out);
  std::vector<long long> degrees;
  if (p.contains("d_range")) {
    const auto range = as_vector(p.at("d_range"), "d_range");
    if (range.size() != 2) throw InvalidInput("d_range must be [lo, hi]");
    for (long long d = range[0].convert_to<long long>(); d <= range[1].convert_to<long long>(); ++d) degrees.push_back(d);
  } else {
    degrees.push_back(as_int(require(p, "d"), "d"));
  }
  const QuotSetup first = parse_setup(p, degrees.front());
  const PicTorusData pic = pic_torus(first.type);
  if (first.det_component.size() && first.det_component.size() != pic.lattice.component_group().rank())
    throw InvalidInput("det_component has the wrong length");

  auto& bounds = b.table("stable_range", {"d", "bound_generic", "bound_smooth", "satisfied"});
  auto& tbl = b.table("orientability", {"d", "component", "fiber_rank", "w1_on_circle_duals", "orientable"});
  for (long long d : degrees) {
    const QuotSetup s = parse_setup(p, d);
    const StabilityBounds sb = stability_bounds(s);
    b.row(bounds, {str(d), str(sb.bound_generic), str(sb.bound_smooth), str(sb.satisfied)}, "stable-range");
    if (!sb.satisfied && !p.contains("d_range")) throw InvalidInput("degree is outside the stable range");
    if (!sb.satisfied) continue;
    for (const auto& row : orientability_report(s, pic)) {
      Z2Vector w;
      for (int v : row.w1_on_circles) w.push_back(static_cast<std::uint8_t>(v));
      b.row(tbl,
            {str(d), "T" + str((long long)component_position(row.component)), str(row.fiber_rank), bits(w),
             str(row.orientable)},
            "orientability-criterion");
    }
  }
}

inline void holonomy_check(const Json& p, std::uint64_t seed, Report& out) {
  using namespace detail;
  Builder b(out);
  const IntegerMatrix u = as_matrix(require(p, "u"), "u");
  const ConnectionAu c(u);
  const std::size_t n = u.rows();

  if (p.contains("v0")) {
    const RealVector v0 = as_real_vector(p.at("v0"), "v0"), w = as_real_vector(require(p, "w"), "w");
    if (v0.size() != n || w.size() != n) throw InvalidInput("v0 and w need the dimension of u");
    const Complex closed = segment_holonomy(c, v0, w, TransportMode::ClosedForm);
    const Complex ode = segment_holonomy(c, v0, w, TransportMode::Ode);
    auto& seg = b.table("segment", {"mode", "value", "residual"});
    b.row(seg, {"closed-form", complex_str(closed), sci(0)}, "holonomy-closed-form");
    b.row(seg, {"ode", complex_str(ode), sci(std::abs(ode - closed))}, "holonomy-ode");
    if (std::abs(ode - closed) > 1e-8) out.exit_code = kPropertyFailure;
  }

  const UCharacter a(u, p.contains("angles") ? as_rationals(p.at("angles"), "angles")
                                             : std::vector<Rational>(n, Rational(0)));
  if (p.contains("lambda")) {
    const IntegerVector l = as_vector(p.at("lambda"), "lambda");
    const RealVector mu = p.contains("mu") ? as_real_vector(p.at("mu"), "mu") : RealVector(n, 0.0);
    if (l.size() != n || mu.size() != n) throw InvalidInput("lambda and mu need the dimension of u");
    const Complex closed = loop_holonomy(a, mu, l), ode = loop_holonomy_ode(a, mu, l);
    auto& loop = b.table("loop", {"mode", "value", "residual"});
    b.row(loop, {"closed-form", complex_str(closed), sci(0)}, "holonomy-closed-form");
    b.row(loop, {"ode", complex_str(ode), sci(std::abs(ode - closed))}, "holonomy-ode");
    if (std::abs(ode - closed) > 1e-8) out.exit_code = kPropertyFailure;
  }

  const int trials = static_cast<int>(p.contains("trials") ? as_int(p.at("trials"), "trials") : 100);
  const CocycleReport cr = check_cocycle(c, a, trials, seed);
  auto& cc = b.table("cocycle", {"trials", "max_residual_below_1e-10", "ok"});
  b.row(cc, {str((long long)trials), str(cr.max_residual <= 1e-10), str(cr.ok)}, "holonomy-closed-form");
  if (!cr.ok) out.exit_code = kPropertyFailure;
}

// ---------------------------------------------------------------------------
// Property batteries for `verify`.

struct PropertyResult {
  std::string name;
  std::string tag;
  long long trials = 0;
  long long failures = 0;
};

inline PropertyResult verify_smith(std::mt19937_64& rng, int trials) {
  PropertyResult r{"smith-form", "computed", trials, 0};
  std::uniform_int_distribution<int> dim(1, 5), entry(-6, 6);
  for (int t = 0; t < trials; ++t) {
    const std::size_t m = static_cast<std::size_t>(dim(rng)), n = static_cast<std::size_t>(dim(rng));
    IntegerMatrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = entry(rng);
    const SmithDecomposition s = smith_normal_form(A);
    bool ok = s.U * A * s.V == s.D && is_unimodular(s.U) && is_unimodular(s.V);
    const auto d = s.diagonal();
    for (std::size_t i = 0; ok && i + 1 < d.size(); ++i)
      ok = d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0;
    r.failures += !ok;
  }
  return r;
}

inline PropertyResult verify_normal_form(std::mt19937_64& rng, int trials) {
  PropertyResult r{"lattice-normal-form", "lattice-normal-form", trials, 0};
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const LatticeInvolution L(random_involution(rng, n));
    const NormalFormBasis cb = normal_form_basis(L);
    const bool ok = is_unimodular(cb.U) && L.tau() * cb.U == cb.U * cb.normal_form() &&
                    L.component_group().rank() == n - cb.a - cb.s && tate_h2(L.tau()).rank() == cb.a - cb.s;
    r.failures += !ok;
  }
  return r;
}

inline PropertyResult verify_obstruction(std::mt19937_64& rng, int trials) {
  PropertyResult r{"obstruction-vanishes", "obstruction-vanishes", trials, 0};
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const LatticeInvolution L(random_involution(rng, n));
    const UCharacter alpha = random_ucharacter(rng, random_anti_invariant_form(rng, L));
    const Z2Vector cls = obstruction_class(L, alpha);
    r.failures += std::any_of(cls.begin(), cls.end(), [](auto x) { return x != 0; });
  }
  return r;
}

inline PropertyResult verify_classification(std::mt19937_64& rng, int trials) {
  PropertyResult r{"class-round-trip", "class-pairs", trials, 0};
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const LatticeInvolution L(random_involution(rng, n));
    const AntiInvariantAltForm u(L, random_anti_invariant_form(rng, L));
    const NormalFormBasis cb = normal_form_basis(L);
    const auto classes = classes_with_form(L, u);
    bool ok = classes.size() == (std::size_t{1} << (cb.a - cb.s));
    for (std::size_t i = 0; ok && i < classes.size(); ++i)
      for (std::size_t j = i + 1; ok && j < classes.size(); ++j) ok = !(classes[i] == classes[j]);
    // Every other w0 with the same form is rejected.
    std::size_t accepted = 0;
    if (L.fixed_rank() <= 8)
      for (const auto& w : all_z2_vectors(L.fixed_rank())) {
        try {
          make_class(L, u.matrix(), w);
          ++accepted;
        } catch (const InvalidInput&) {
        }
      }
    if (L.fixed_rank() <= 8) ok = ok && accepted == classes.size();
    r.failures += !ok;
  }
  return r;
}

inline PropertyResult verify_holonomy_bridge(std::mt19937_64& rng, int trials) {
  PropertyResult r{"holonomy-bridge", "difference-formula", trials, 0};
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const LatticeInvolution L(random_involution(rng, n));
    const AntiInvariantAltForm u(L, random_anti_invariant_form(rng, L));
    const UCharacter alpha = random_real_ucharacter(rng, L, u);
    const SWFunction f = sw_function(class_from_real_character(L, alpha));
    const auto& comps = f.components();
    const auto& comp = comps[std::uniform_int_distribution<std::size_t>(0, comps.size() - 1)(rng)];
    IntegerVector c(L.fixed_rank());
    for (auto& x : c) x = small(rng);
    const IntegerVector lambda = L.fixed_basis() * c;
    RealVector mu(n), x(n);
    for (auto& v : x) v = unit(rng);
    const RealVector tx = [&] {
      RealVector y(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += to_double(L.tau()(i, j)) * x[j];
      return y;
    }();
    for (std::size_t i = 0; i < n; ++i) mu[i] = to_double(comp.doubled[i]) / 2 + (x[i] + tx[i]) / 2;
    const Complex predicted = phase(static_cast<double>(f.value(comp, lambda)));
    const Complex ode = loop_holonomy_ode(alpha, mu, lambda);
    const Complex closed = loop_holonomy(alpha, mu, lambda);
    r.failures += !(std::abs(predicted - ode) <= 1e-6 && std::abs(closed - ode) <= 1e-8);
  }
  return r;
}

inline PropertyResult verify_components(int g_max) {
  PropertyResult r{"component-count", "fixed-components", 0, 0};
  for (const auto& t : klein_types(1, g_max)) {
    const PicTorusData p = pic_torus(t);
    const NormalFormBasis cb = normal_form_basis(p.lattice);
    const std::size_t expected = std::size_t{1} << (t.r - 1);
    ++r.trials;
    r.failures += !(p.component_count() == expected && (std::size_t{1} << (2 * t.g - cb.a - cb.s)) == expected);
  }
  return r;
}

inline PropertyResult verify_theta(int g_max) {
  PropertyResult r{"theta-class-routes", "theta-circle-rule", 0, 0};
  for (const auto& t : klein_types(1, g_max)) {
    const PicTorusData p = pic_torus(t);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * t.g)); ++mask) {
      const QuadraticRefinement q = QuadraticRefinement::from_mask(t.g, mask);
      if (!is_real_refinement(q, p.surface)) continue;
      ++r.trials;
      r.failures += !(theta_class_from_q(p, q) == class_from_real_character(p.lattice, chi_from_q(p, q)));
    }
  }
  return r;
}

inline PropertyResult verify_two_circle_elliptic() {
  PropertyResult r{"two-circle-elliptic-symmetric-products", "orientability-criterion", 0, 0};
  const KleinType t = KleinType::make(1, 2, 0);
  for (long long d = 2; d <= 9; ++d) {
    const auto rep = symmetric_power_report(t, d);
    ++r.trials;
    const bool ok = rep.size() == 2 && !rep[0].orientable && rep[1].orientable == (d % 2 == 0);
    r.failures += !ok;
  }
  return r;
}

inline PropertyResult verify_localization(std::mt19937_64& rng, int trials) {
  PropertyResult r{"localized-degree-parity", "localization", 0, 0};
  for (int rank = 1; rank <= 6; ++rank) {
    const LocalizationInput in = standard_localization_input(2, 1, rank, {1});
    GradedZ2Poly expected = in.w_E[0];
    if (binomial_mod2(rank, 2)) expected = expected + in.w_N[0];
    ++r.trials;
    r.failures += !(localize(in) == expected);
  }
  const auto types = klein_types(0, 6);
  for (int t = 0; t < trials; ++t) {
    const KleinType k = types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng)];
    Z2Vector w(static_cast<std::size_t>(k.r));
    int sum = 0;
    for (auto& x : w) sum ^= (x = static_cast<std::uint8_t>(rng() & 1));
    const long long d = 2 * std::uniform_int_distribution<long long>(-10, 10)(rng) + sum;
    ++r.trials;
    r.failures += !degree_parity_check(validate_curve_class(k, d, w));
  }
  return r;
}

inline void verify(const Json& p, std::uint64_t seed, Report& out) {
  using namespace detail;
  Builder b(out);
  const std::string suite = p.contains("suite") ? p.at("suite").get<std::string>() : "all";
  const int trials = static_cast<int>(p.contains("trials") ? as_int(p.at("trials"), "trials") : 0);
  auto n = [&](int dflt) { return trials > 0 ? trials : dflt; };
  std::mt19937_64 rng(seed);

  const std::vector<std::pair<std::string, std::function<PropertyResult()>>> suites = {
      {"smith", [&] { return verify_smith(rng, n(200)); }},
      {"normal-form", [&] { return verify_normal_form(rng, n(300)); }},
      {"obstruction", [&] { return verify_obstruction(rng, n(1000)); }},
      {"classification", [&] { return verify_classification(rng, n(200)); }},
      {"holonomy-bridge", [&] { return verify_holonomy_bridge(rng, n(500)); }},
      {"components", [&] { return verify_components(6); }},
      {"theta", [&] { return verify_theta(3); }},
      {"two-circle-elliptic", [&] { return verify_two_circle_elliptic(); }},
      {"localization", [&] { return verify_localization(rng, n(500)); }},
  };
  bool found = false;
  auto& tbl = b.table("properties", {"suite", "property", "trials", "failures", "status"});
  for (const auto& [name, run] : suites) {
    if (suite != "all" && suite != name) continue;
    found = true;
    const PropertyResult res = run();
    b.row(tbl, {name, res.name, str(res.trials), str(res.failures), res.failures ? "FAIL" : "PASS"}, res.tag);
    if (res.failures) out.exit_code = kPropertyFailure;
  }
  if (!found) throw InvalidInput("unknown verify suite '" + suite + "'");
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"classify-torus", "classify-curve", "theta-table",
                                                 "orientability",  "holonomy-check", "verify"};
  return names;
}

inline Report run(const RunConfig& cfg) {
  Report out;
  out.command = cfg.command;
  out.input = cfg.parameters;
  out.seed = cfg.seed;
  if (!cfg.parameters.is_object()) throw InvalidInput("parameters must be a JSON object");
  if (cfg.command == "classify-torus") classify_torus(cfg.parameters, out);
  else if (cfg.command == "classify-curve") classify_curve(cfg.parameters, out);
  else if (cfg.command == "theta-table") theta_table(cfg.parameters, out);
  else if (cfg.command == "orientability") orientability(cfg.parameters, out);
  else if (cfg.command == "holonomy-check") holonomy_check(cfg.parameters, cfg.seed, out);
  else if (cfg.command == "verify") verify(cfg.parameters, cfg.seed, out);
  else throw InvalidInput("unknown command '" + cfg.command + "'");
  return out;
}

// Reads {"command", "parameters", "seed", "output_format"}; every key optional.
inline RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("configuration must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") cfg.command = value.get<std::string>();
    else if (key == "parameters") cfg.parameters = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::as_int(value, "seed"));
    else if (key == "output_format") cfg.format = value.get<std::string>();
    else throw InvalidInput("unknown configuration key '" + key + "'");
  }
  return cfg;
}

inline std::string render_tsv(const Report& r) {
  std::ostringstream o;
  o << "command\t" << r.command << "\n";
  o << "input\t" << r.input.dump() << "\n";
  o << "seed\t" << r.seed << "\n";
  for (const auto& t : r.tables) {
    o << "\n[" << t.name << "]\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) o << (i ? "\t" : "") << t.columns[i];
    o << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) o << (i ? "\t" : "") << row[i];
      o << "\n";
    }
  }
  o << "\n[provenance]\ntag\tmeaning\n";
  for (const auto& tag : r.provenance_tags) o << tag << "\t" << provenance_glossary().at(tag) << "\n";
  o << "\nstatus\t" << (r.exit_code == kOk ? "ok" : "property-failure") << "\n";
  return o.str();
}

inline std::string render_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["seed"] = r.seed;
  Json tables = Json::object();
  for (const auto& t : r.tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
      rows.push_back(obj);
    }
    tables[t.name] = rows;
  }
  j["tables"] = tables;
  Json prov = Json::object();
  for (const auto& tag : r.provenance_tags) prov[tag] = provenance_glossary().at(tag);
  j["provenance"] = prov;
  j["status"] = r.exit_code == kOk ? "ok" : "property-failure";
  return j.dump(2) + "\n";
}

inline std::string render(const Report& r, const std::string& format) {
  if (format == "tsv") return render_tsv(r);
  if (format == "json") return render_json(r);
  throw InvalidInput("unknown output format '" + format + "'");
}

}  // namespace realbundles::cli
