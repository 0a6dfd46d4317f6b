#pragma once

// Numerical side of the picture: the connection d - pi i u(v, dv) on the
// trivial bundle over V, its parallel transport, the factors of automorphy it
// descends along, and the curvature/holonomy relation. Double precision.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "real_torus.hpp"

namespace realbundles {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using RealMatrix = std::vector<std::vector<double>>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr int kOdeStepsPerUnit = 10000;

inline double to_double(const Integer& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Complex phase(double angle) { return std::polar(1.0, kPi * angle); }
inline Complex phase(const Rational& angle) { return phase(to_double(reduce_angle(angle))); }

inline RealVector to_real(const IntegerVector& v) {
  RealVector r;
  for (const auto& x : v) r.push_back(to_double(x));
  return r;
}

// The connection A_u on V x C whose curvature is -2 pi i u.
class ConnectionAu {
 public:
  explicit ConnectionAu(IntegerMatrix u) : u_(std::move(u)) {
    if (!is_alternating(u_)) throw InvalidInput("connection form is not alternating");
    for (std::size_t i = 0; i < u_.rows(); ++i) {
      m_.emplace_back();
      for (std::size_t j = 0; j < u_.cols(); ++j) m_.back().push_back(to_double(u_(i, j)));
    }
  }
  const IntegerMatrix& form() const { return u_; }
  std::size_t dim() const { return u_.rows(); }

  double operator()(const RealVector& v, const RealVector& w) const {
    if (v.size() != dim() || w.size() != dim()) throw InvalidInput("vector of wrong length");
    double s = 0;
    for (std::size_t i = 0; i < m_.size(); ++i) {
      if (v[i] == 0) continue;
      double r = 0;
      for (std::size_t j = 0; j < m_.size(); ++j) r += m_[i][j] * w[j];
      s += v[i] * r;
    }
    return s;
  }

 private:
  IntegerMatrix u_;
  RealMatrix m_;
};

enum class TransportMode { ClosedForm, Ode };

inline RealVector axpy(double t, const RealVector& x, const RealVector& y) {
  RealVector r = y;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += t * x[i];
  return r;
}

// RK4 for zeta' = pi i u(c(t), c'(t)) zeta along c(t) = start + t (end - start),
// with steps_per_unit steps per unit of Euclidean length (at least that many).
inline Complex ode_segment_transport(const ConnectionAu& c, const RealVector& start, const RealVector& end,
                                     int steps_per_unit = kOdeStepsPerUnit) {
  RealVector w = end;
  double length = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] -= start[i];
    length += w[i] * w[i];
  }
  const int steps = static_cast<int>(std::ceil(steps_per_unit * std::max(1.0, std::sqrt(length))));
  const double h = 1.0 / steps;
  auto rhs = [&](double t, Complex z) { return Complex(0, kPi * c(axpy(t, w, start), w)) * z; };
  Complex z = 1;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Complex k1 = rhs(t, z);
    const Complex k2 = rhs(t + h / 2, z + h / 2 * k1);
    const Complex k3 = rhs(t + h / 2, z + h / 2 * k2);
    const Complex k4 = rhs(t + h, z + h * k3);
    z += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

// Transport along t -> v0 + t w, t in [0, 1]; exp(pi i u(v0, w)) in closed form.
inline Complex segment_holonomy(const ConnectionAu& c, const RealVector& v0, const RealVector& w,
                                TransportMode mode = TransportMode::ClosedForm) {
  if (mode == TransportMode::ClosedForm) return phase(c(v0, w));
  return ode_segment_transport(c, v0, axpy(1.0, w, v0));
}

// Holonomy of the descended connection around the image of [mu, mu + lambda],
// for the bundle of the u-character alpha.
inline Complex loop_holonomy(const UCharacter& alpha, const RealVector& mu, const IntegerVector& lambda) {
  const ConnectionAu c(alpha.form());
  const RealVector l = to_real(lambda);
  return std::conj(phase(alpha.angle(lambda))) * phase(c(axpy(1.0, mu, mu), l));
}

// The same loop, transported numerically and glued with e_lambda(mu)^{-1}.
inline Complex loop_holonomy_ode(const UCharacter& alpha, const RealVector& mu, const IntegerVector& lambda) {
  const ConnectionAu c(alpha.form());
  const RealVector l = to_real(lambda);
  const Complex transport = ode_segment_transport(c, mu, axpy(1.0, l, mu));
  const Complex factor = phase(alpha.angle(lambda)) * phase(c(l, mu));
  return transport / factor;
}

// e_lambda(v) = a_lambda exp(pi i u(lambda, v)).
inline Complex factor_of_automorphy(const ConnectionAu& c, const UCharacter& a, const IntegerVector& lambda,
                                    const RealVector& v) {
  return phase(a.angle(lambda)) * phase(c(to_real(lambda), v));
}

struct CocycleReport {
  bool ok = true;
  double max_residual = 0;
};

// e_{l'}(v + l) e_l(v) = e_{l + l'}(v) at random points; needs a to be a
// u-character for the form of c.
inline CocycleReport check_cocycle(const ConnectionAu& c, const UCharacter& a, int trials, std::uint64_t seed,
                                   double tolerance = 1e-10) {
  if (a.dim() != c.dim()) throw InvalidInput("character and connection have different ranks");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  CocycleReport r;
  for (int t = 0; t < trials; ++t) {
    IntegerVector l1(c.dim()), l2(c.dim());
    RealVector v(c.dim());
    for (std::size_t i = 0; i < c.dim(); ++i) {
      l1[i] = coef(rng);
      l2[i] = coef(rng);
      v[i] = coord(rng);
    }
    const Complex lhs = factor_of_automorphy(c, a, l2, axpy(1.0, to_real(l1), v)) * factor_of_automorphy(c, a, l1, v);
    const Complex rhs = factor_of_automorphy(c, a, add(l1, l2), v);
    r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs));
  }
  r.ok = r.max_residual <= tolerance;
  return r;
}

// Integral of -2 pi i u over the triangle (0, l, l'), by the midpoint rule on
// the square parametrisation s ((1 - t) l + t l').
inline Complex triangle_flux(const ConnectionAu& c, const RealVector& l1, const RealVector& l2, int grid = 100) {
  double integral = 0;
  const double h = 1.0 / grid;
  RealVector d = l2;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= l1[i];
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double s = (i + 0.5) * h, t = (j + 0.5) * h;
      RealVector ds(l1.size()), dt(l1.size());
      for (std::size_t k = 0; k < ds.size(); ++k) {
        ds[k] = (1 - t) * l1[k] + t * l2[k];
        dt[k] = s * d[k];
      }
      integral += c(ds, dt) * h * h;
    }
  return Complex(0, -2 * kPi * integral);
}

struct TriangleReport {
  double residual = 0;  // |alpha(l + l')^{-1} alpha(l') alpha(l) - exp(flux)|
  Complex flux;
};

inline TriangleReport triangle_identity(const UCharacter& alpha, const IntegerVector& l1, const IntegerVector& l2) {
  const ConnectionAu c(alpha.form());
  TriangleReport r;
  r.flux = triangle_flux(c, to_real(l1), to_real(l2));
  const Complex lhs = std::conj(phase(alpha.angle(add(l1, l2)))) * phase(alpha.angle(l2)) * phase(alpha.angle(l1));
  r.residual = std::abs(lhs - std::exp(r.flux));
  return r;
}

// Complex structure J on V (J^2 = -1) compatible with u: u(Jv, Jw) = u(v, w).
class ComplexTorusData {
 public:
  ComplexTorusData(RealMatrix J, IntegerMatrix u) : J_(std::move(J)), c_(u), u_(std::move(u)) {
    const std::size_t n = u_.rows();
    if (J_.size() != n) throw InvalidInput("complex structure has the wrong size");
    for (const auto& row : J_)
      if (row.size() != n) throw InvalidInput("complex structure has the wrong size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double sq = 0;
        for (std::size_t k = 0; k < n; ++k) sq += J_[i][k] * J_[k][j];
        if (std::abs(sq + (i == j ? 1.0 : 0.0)) > 1e-12) throw InvalidInput("J does not square to -1");
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const RealVector ei = unit(i), ej = unit(j);
        if (std::abs(c_(apply(ei), apply(ej)) - c_(ei, ej)) > 1e-9) throw InvalidInput("u is not J-invariant");
      }
  }

  RealVector apply(const RealVector& v) const {
    RealVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) r[i] += J_[i][j] * v[j];
    return r;
  }
  // H(v, w) = u(v, J w) + i u(v, w)
  Complex hermitian(const RealVector& v, const RealVector& w) const { return {c_(v, apply(w)), c_(v, w)}; }
  const ConnectionAu& connection() const { return c_; }
  const IntegerMatrix& form() const { return u_; }

 private:
  RealVector unit(std::size_t i) const {
    RealVector e(u_.rows());
    e[i] = 1;
    return e;
  }
  RealMatrix J_;
  ConnectionAu c_;
  IntegerMatrix u_;
};

// The holomorphic factor eps_l(v) = a_l exp(pi (H(l, v) + H(l, l) / 2)), the
// unitary factor e_l(v) and the gauge g(v) = exp(pi H(v, v) / 2) relating them.
class CanonicalFactors {
 public:
  CanonicalFactors(ComplexTorusData d, UCharacter a) : d_(std::move(d)), a_(std::move(a)) {
    if (!(a_.form() == d_.form())) throw InvalidInput("character is not a u-character for this form");
  }

  Complex holomorphic(const IntegerVector& l, const RealVector& v) const {
    const RealVector lr = to_real(l);
    return phase(a_.angle(l)) * std::exp(kPi * (d_.hermitian(lr, v) + 0.5 * d_.hermitian(lr, lr)));
  }
  Complex unitary(const IntegerVector& l, const RealVector& v) const {
    return factor_of_automorphy(d_.connection(), a_, l, v);
  }
  Complex gauge(const RealVector& v) const { return std::exp(0.5 * kPi * d_.hermitian(v, v)); }

  // max over samples of |eps_l(v) - g(v + l) g(v)^{-1} e_l(v)| / |eps_l(v)|
  double gauge_residual(int trials, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double worst = 0;
    const std::size_t n = d_.form().rows();
    for (int t = 0; t < trials; ++t) {
      IntegerVector l(n);
      RealVector v(n);
      for (std::size_t i = 0; i < n; ++i) {
        l[i] = coef(rng);
        v[i] = coord(rng);
      }
      const Complex eps = holomorphic(l, v);
      const Complex via = gauge(axpy(1.0, to_real(l), v)) / gauge(v) * unitary(l, v);
      worst = std::max(worst, std::abs(eps - via) / std::abs(eps));
    }
    return worst;
  }

  // max relative defect of eps_{l'}(v + l) eps_l(v) = eps_{l + l'}(v)
  double cocycle_residual(int trials, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double worst = 0;
    const std::size_t n = d_.form().rows();
    for (int t = 0; t < trials; ++t) {
      IntegerVector l1(n), l2(n);
      RealVector v(n);
      for (std::size_t i = 0; i < n; ++i) {
        l1[i] = coef(rng);
        l2[i] = coef(rng);
        v[i] = coord(rng);
      }
      const Complex lhs = holomorphic(l2, axpy(1.0, to_real(l1), v)) * holomorphic(l1, v);
      const Complex rhs = holomorphic(add(l1, l2), v);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    return worst;
  }

  const ComplexTorusData& data() const { return d_; }
  const UCharacter& character() const { return a_; }

 private:
  ComplexTorusData d_;
  UCharacter a_;
};

inline CanonicalFactors canonical_factor(const ComplexTorusData& d, const UCharacter& a) { return {d, a}; }

// Closed piecewise-linear loop through the given vertices; parameter s in
// [0, 1] runs over the edges at equal speed, starting at vertices[0].
struct PiecewiseLinearLoop {
  std::vector<RealVector> vertices;

  RealVector at(double s) const {
    const std::size_t k = vertices.size();
    const double x = std::clamp(s, 0.0, 1.0) * static_cast<double>(k);
    std::size_t e = std::min(static_cast<std::size_t>(x), k - 1);
    const double t = x - static_cast<double>(e);
    const RealVector& p = vertices[e];
    const RealVector& q = vertices[(e + 1) % k];
    RealVector r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] + t * (q[i] - p[i]);
    return r;
  }
};

// C(s, t): t = 1 is the loop, the rest of the boundary goes to the base point.
using Cap = std::function<RealVector(double s, double t)>;

inline Cap cone_cap(const PiecewiseLinearLoop& loop) {
  return [loop](double s, double t) {
    const RealVector& base = loop.vertices.front();
    RealVector p = loop.at(s);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = base[i] + t * (p[i] - base[i]);
    return p;
  };
}

inline Complex loop_transport(const ConnectionAu& c, const PiecewiseLinearLoop& loop) {
  Complex z = 1;
  const std::size_t k = loop.vertices.size();
  for (std::size_t e = 0; e < k; ++e) z *= ode_segment_transport(c, loop.vertices[e], loop.vertices[(e + 1) % k]);
  return z;
}

// -2 pi i times the integral of u(dC/ds, dC/dt) ds dt over the unit square.
inline Complex cap_flux(const ConnectionAu& c, const Cap& cap, int grid = 100) {
  const double h = 1.0 / grid, d = 1e-6;
  double integral = 0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double s = (i + 0.5) * h, t = (j + 0.5) * h;
      RealVector ds = cap(s + d, t), dt = cap(s, t + d);
      const RealVector s0 = cap(s - d, t), t0 = cap(s, t - d);
      for (std::size_t k = 0; k < ds.size(); ++k) {
        ds[k] = (ds[k] - s0[k]) / (2 * d);
        dt[k] = (dt[k] - t0[k]) / (2 * d);
      }
      integral += c(ds, dt) * h * h;
    }
  return Complex(0, -2 * kPi * integral);
}

struct HolonomyFormulaReport {
  Complex transport;
  Complex flux;
  double residual = 0;  // |transport - exp(flux)|
};

// grid = 0 picks 50 cells per edge, so the corners of the loop fall on cell
// boundaries and the midpoint rule never straddles a kink.
inline HolonomyFormulaReport holonomy_formula_check(const ConnectionAu& c, const PiecewiseLinearLoop& loop,
                                                    const Cap& cap, int grid = 0) {
  if (loop.vertices.size() < 2) throw InvalidInput("loop needs at least two vertices");
  for (const auto& v : loop.vertices)
    if (v.size() != c.dim()) throw InvalidInput("loop vertex of wrong dimension");
  const RealVector& base = loop.vertices.front();
  auto near = [](const RealVector& a, const RealVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > 1e-9) return false;
    return true;
  };
  for (int k = 0; k <= 64; ++k) {
    const double x = k / 64.0;
    if (!near(cap(x, 1.0), loop.at(x))) throw InvalidInput("cap does not restrict to the loop");
    if (!near(cap(x, 0.0), base) || !near(cap(0.0, x), base) || !near(cap(1.0, x), base))
      throw InvalidInput("cap is not constant on the rest of the boundary");
  }
  HolonomyFormulaReport r;
  r.transport = loop_transport(c, loop);
  r.flux = cap_flux(c, cap, grid > 0 ? grid : 50 * static_cast<int>(loop.vertices.size()));
  r.residual = std::abs(r.transport - std::exp(r.flux));
  return r;
}

}  // namespace realbundles
