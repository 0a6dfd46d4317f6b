#pragma once

// Exact integer linear algebra: Smith normal form, lattice solving and the
// elementary abelian 2-groups that appear as Tate cohomology of Z/2.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace realbundles {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntegerVector = std::vector<Integer>;
// Vector over F2, one entry per byte, entries are 0 or 1.
using Z2Vector = std::vector<std::uint8_t>;

// Raised for malformed input: wrong shapes, non-involutions, forms that fail
// their defining identities and so on.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline int mod2(const Integer& x) { return static_cast<int>(x & 1); }

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntegerMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw InvalidInput("ragged matrix");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntegerMatrix from_columns(const std::vector<IntegerVector>& cols, std::size_t rows) {
    IntegerMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InvalidInput("column of wrong length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntegerVector column(std::size_t j) const {
    IntegerVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  IntegerVector row(std::size_t i) const {
    return IntegerVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Columns [first, last).
  IntegerMatrix columns(std::size_t first, std::size_t last) const {
    IntegerMatrix m(rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = first; j < last; ++j) m(i, j - first) = (*this)(i, j);
    return m;
  }
  IntegerMatrix row_range(std::size_t first, std::size_t last) const {
    IntegerMatrix m(last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - first, j) = (*this)(i, j);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  Integer max_abs() const {
    Integer best = 0;
    for (const auto& x : data_) best = std::max(best, Integer(abs(x)));
    return best;
  }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntegerVector operator*(const IntegerMatrix& a, const IntegerVector& x) {
    if (a.cols_ != x.size()) throw InvalidInput("matrix-vector shape mismatch");
    IntegerVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend IntegerMatrix operator+(IntegerMatrix a, const IntegerMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix sum shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend IntegerMatrix operator-(IntegerMatrix a, const IntegerMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix difference shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend IntegerMatrix operator-(IntegerMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend IntegerMatrix operator*(const Integer& s, IntegerMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  // Elementary operations, used by the Smith reduction.
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row i += k * row j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
  }
  // col i += k * col j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }
  void negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline IntegerVector unit_vector(std::size_t n, std::size_t i) {
  IntegerVector e(n);
  e[i] = 1;
  return e;
}

inline IntegerVector add(IntegerVector a, const IntegerVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline IntegerVector subtract(IntegerVector a, const IntegerVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline IntegerVector scale(const Integer& k, IntegerVector a) {
  for (auto& x : a) x *= k;
  return a;
}
inline bool is_zero(const IntegerVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// x^T M y
inline Integer bilinear(const IntegerMatrix& m, const IntegerVector& x, const IntegerVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

inline bool is_alternating(const IntegerMatrix& u) {
  if (!u.square()) return false;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (u(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < u.cols(); ++j)
      if (u(i, j) != -u(j, i)) return false;
  }
  return true;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntegerMatrix& m) {
  if (!m.square()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntegerMatrix& m) {
  if (!m.square()) return false;
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, zeros last.
// U_inv and V_inv are carried along since most callers need them.
struct SmithDecomposition {
  IntegerMatrix U, D, V;
  IntegerMatrix U_inv, V_inv;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// Floor division for arbitrary-precision integers.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntegerMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithDecomposition s;
  IntegerMatrix D = A;
  IntegerMatrix U = IntegerMatrix::identity(m), Ui = IntegerMatrix::identity(m);
  IntegerMatrix V = IntegerMatrix::identity(n), Vi = IntegerMatrix::identity(n);

  // Each row operation on D is mirrored on U; the inverse operation is applied
  // to the columns of U_inv. Likewise for columns with V and V_inv.
  auto row_swap = [&](std::size_t i, std::size_t j) {
    D.swap_rows(i, j);
    U.swap_rows(i, j);
    Ui.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t i, std::size_t j, const Integer& k) {
    D.add_row(i, j, k);
    U.add_row(i, j, k);
    Ui.add_col(j, i, -k);
  };
  auto row_neg = [&](std::size_t i) {
    D.negate_row(i);
    U.negate_row(i);
    Ui.negate_col(i);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    D.swap_cols(i, j);
    V.swap_cols(i, j);
    Vi.swap_rows(i, j);
  };
  auto col_add = [&](std::size_t i, std::size_t j, const Integer& k) {
    D.add_col(i, j, k);
    V.add_col(i, j, k);
    Vi.add_row(j, i, -k);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < best)) {
          found = true;
          best = abs(D(i, j));
          pi = i;
          pj = j;
        }
    if (!found) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_add(i, t, -detail::floor_div(D(i, t), D(t, t)));
        if (D(i, t) != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_add(j, t, -detail::floor_div(D(t, j), D(t, t)));
        if (D(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Row and column are clear; enforce divisibility of the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) row_neg(t);
  }

  s.rank = t;
  s.D = std::move(D);
  s.U = std::move(U);
  s.V = std::move(V);
  s.U_inv = std::move(Ui);
  s.V_inv = std::move(Vi);
  return s;
}

// Some integer x with A x = b, or nothing when b is outside the column lattice.
inline std::optional<IntegerVector> lattice_solve(const IntegerMatrix& A, const IntegerVector& b) {
  if (b.size() != A.rows()) throw InvalidInput("lattice_solve: right-hand side has wrong length");
  const SmithDecomposition s = smith_normal_form(A);
  const IntegerVector c = s.U * b;
  IntegerVector y(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

// Columns form a basis of ker A; the kernel is saturated by construction.
inline IntegerMatrix kernel_basis(const IntegerMatrix& A) {
  const SmithDecomposition s = smith_normal_form(A);
  return s.V.columns(s.rank, A.cols());
}

inline std::size_t rank(const IntegerMatrix& A) { return smith_normal_form(A).rank; }

// A finite group of the form (Z/2)^k, presented as a quotient of a saturated
// sublattice K = ker(A) by a sublattice generated by the given columns.
class ElementaryTwoGroup {
 public:
  ElementaryTwoGroup() = default;

  ElementaryTwoGroup(const IntegerMatrix& ambient_equations, const IntegerMatrix& denominator_generators)
      : equations_(ambient_equations) {
    const std::size_t n = ambient_equations.cols();
    if (denominator_generators.rows() != n) throw InvalidInput("denominator generators of wrong length");
    const SmithDecomposition a = smith_normal_form(ambient_equations);
    const std::size_t k = n - a.rank;
    kernel_ = a.V.columns(a.rank, n);
    const IntegerMatrix kernel_coords = a.V_inv.row_range(a.rank, n);  // left inverse on ker A

    if (!(ambient_equations * denominator_generators).is_zero())
      throw InvalidInput("denominator is not contained in the ambient kernel");
    const IntegerMatrix M = kernel_coords * denominator_generators;  // k x m
    const SmithDecomposition q = smith_normal_form(M);
    if (q.rank != k) throw InvalidInput("quotient is infinite");

    std::vector<std::size_t> two_rows;
    for (std::size_t i = 0; i < k; ++i) {
      if (q.D(i, i) == 2) two_rows.push_back(i);
      else if (q.D(i, i) != 1) throw InvalidInput("quotient is not an elementary 2-group");
    }
    const IntegerMatrix reducer = q.U * kernel_coords;  // k x n
    reducer_ = IntegerMatrix(two_rows.size(), n);
    for (std::size_t r = 0; r < two_rows.size(); ++r) {
      for (std::size_t j = 0; j < n; ++j) reducer_(r, j) = reducer(two_rows[r], j) & 1;
      reps_.push_back(kernel_ * q.U_inv.column(two_rows[r]));
    }
  }

  std::size_t rank() const { return reps_.size(); }
  std::size_t order_log2() const { return reps_.size(); }
  const std::vector<IntegerVector>& coset_reps() const { return reps_; }
  const IntegerMatrix& ambient_basis() const { return kernel_; }

  bool in_ambient(const IntegerVector& x) const { return is_zero(equations_ * x); }

  Z2Vector reduce(const IntegerVector& x) const {
    if (!in_ambient(x)) throw InvalidInput("element lies outside the ambient lattice");
    Z2Vector z(reps_.size());
    const IntegerVector y = reducer_ * x;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = static_cast<std::uint8_t>(mod2(y[i]));
    return z;
  }

  // Integer representative of the given coordinates, a sum of coset reps.
  IntegerVector lift(const Z2Vector& z) const {
    if (z.size() != reps_.size()) throw InvalidInput("coordinate vector of wrong length");
    IntegerVector x(equations_.cols());
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i]) x = add(std::move(x), reps_[i]);
    return x;
  }

 private:
  IntegerMatrix equations_;
  IntegerMatrix kernel_;
  IntegerMatrix reducer_;
  std::vector<IntegerVector> reps_;
};

inline bool is_involution(const IntegerMatrix& t) {
  return t.square() && t * t == IntegerMatrix::identity(t.rows());
}

// ker(id + t) / im(id - t)
inline ElementaryTwoGroup tate_h1(const IntegerMatrix& t) {
  if (!is_involution(t)) throw InvalidInput("tate_h1 needs an involution");
  const IntegerMatrix I = IntegerMatrix::identity(t.rows());
  return ElementaryTwoGroup(I + t, I - t);
}

// ker(id - t) / im(id + t)
inline ElementaryTwoGroup tate_h2(const IntegerMatrix& t) {
  if (!is_involution(t)) throw InvalidInput("tate_h2 needs an involution");
  const IntegerMatrix I = IntegerMatrix::identity(t.rows());
  return ElementaryTwoGroup(I - t, I + t);
}

// Every enumeration of (Z/2)^k in this library uses this order: coordinate
// vectors compared lexicographically, zero first.
inline std::vector<Z2Vector> all_z2_vectors(std::size_t k) {
  if (k >= 30) throw InvalidInput("too many coordinates to enumerate");
  std::vector<Z2Vector> out;
  out.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Z2Vector z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = static_cast<std::uint8_t>((mask >> (k - 1 - i)) & 1);
    out.push_back(std::move(z));
  }
  return out;
}

// Solve A x = b over F2. Returns one solution or nothing.
inline std::optional<Z2Vector> solve_mod2(std::vector<Z2Vector> rows, Z2Vector rhs, std::size_t unknowns,
                                          std::size_t* rank_out = nullptr) {
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < unknowns && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c]) {
        for (std::size_t j = 0; j < unknowns; ++j) rows[i][j] ^= rows[r][j];
        rhs[i] ^= rhs[r];
      }
    pivot_col.push_back(c);
    ++r;
  }
  if (rank_out) *rank_out = r;
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rhs[i]) return std::nullopt;
  Z2Vector x(unknowns);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

inline std::string to_string(const IntegerVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}
inline std::string to_string(const Z2Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(int(v[i]));
  return s + "]";
}

}  // namespace realbundles
