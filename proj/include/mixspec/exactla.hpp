#pragma once

// Exact dense linear algebra over Z[i] and Q(i).

#include "mixspec/gaussint.hpp"

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixspec {

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  Matrix conj() const {
    Matrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = data_[k].conj();
    return t;
  }
  Matrix adjoint() const { return conj().transpose(); }

  Matrix column_block(std::size_t first, std::size_t count) const {
    Matrix b(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) b(r, c) = (*this)(r, first + c);
    return b;
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix p(x.rows_, y.cols_);
    for (std::size_t r = 0; r < x.rows_; ++r)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& a = x(r, k);
        if (a.is_zero()) continue;
        for (std::size_t c = 0; c < y.cols_; ++c) p(r, c) += a * y(k, c);
      }
    return p;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    for (std::size_t k = 0; k < x.data_.size(); ++k) x.data_[k] += y.data_[k];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
    for (std::size_t k = 0; k < x.data_.size(); ++k) x.data_[k] -= y.data_[k];
    return x;
  }
  friend Matrix operator*(const T& s, Matrix x) {
    for (auto& v : x.data_) v = s * v;
    return x;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using GMatrix = Matrix<GaussInt>;
using QMatrix = Matrix<GaussRat>;

inline QMatrix to_rational(const GMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q(r, c) = GaussRat(m(r, c));
  return q;
}

/// Integral view of a rational matrix, if every entry is integral.
inline std::optional<GMatrix> to_integral(const QMatrix& q) {
  GMatrix m(q.rows(), q.cols());
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c) {
      if (!q(r, c).is_integral()) return std::nullopt;
      m(r, c) = q(r, c).num();
    }
  return m;
}

template <class T>
bool is_hermitian(const Matrix<T>& m) {
  return m.square() && m == m.adjoint();
}

// ---------------------------------------------------------------------------
// Integer polynomials, coefficients in ascending degree.

struct IntPolynomial {
  std::vector<Integer> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool monic() const { return !coefficients.empty() && coefficients.back() == 1; }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coefficients == b.coefficients;
  }
  friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }
  friend bool operator<(const IntPolynomial& a, const IntPolynomial& b) {
    return std::lexicographical_compare(a.coefficients.begin(), a.coefficients.end(),
                                        b.coefficients.begin(), b.coefficients.end());
  }

  static IntPolynomial from(std::initializer_list<long> ascending) {
    IntPolynomial p;
    for (long c : ascending) p.coefficients.emplace_back(c);
    return p;
  }

  /// p(M), Horner's scheme.
  GMatrix evaluate(const GMatrix& m) const {
    GMatrix acc(m.rows(), m.cols());
    const GMatrix id = GMatrix::identity(m.rows());
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
      acc = acc * m + GaussInt(*it) * id;
    return acc;
  }
};

inline std::string to_string(const IntPolynomial& p) {
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const Integer& c = p.coefficients[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    Integer mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mag != 1 || k == 0) out += mag.get_str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

class SingularMatrixError : public std::domain_error {
public:
  explicit SingularMatrixError(GaussInt det)
      : std::domain_error("matrix is singular (det = " + to_string(det) + ")"), det_(std::move(det)) {}
  const GaussInt& determinant() const { return det_; }

private:
  GaussInt det_;
};

inline void require_square(const GMatrix& m, const char* what) {
  if (!m.square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

/// Fraction-free (Bareiss) elimination; every division is exact in Z[i].
inline GaussInt det(const GMatrix& m) {
  require_square(m, "det");
  const std::size_t n = m.rows();
  if (n == 0) return GaussInt(1);
  GMatrix a = m;
  GaussInt prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a(r, k).is_zero()) ++r;
      if (r == n) return GaussInt(0);
      a.swap_rows(k, r);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      a(i, k) = GaussInt(0);
    }
    prev = a(k, k);
  }
  GaussInt d = a(n - 1, n - 1);
  return negate ? -d : d;
}

/// det(xI - A) for Hermitian A via Faddeev-LeVerrier. Each trace division
/// by k must be exact and real; anything else is a hard error.
inline IntPolynomial char_poly_hermitian(const GMatrix& a) {
  require_square(a, "char_poly_hermitian");
  if (!is_hermitian(a)) throw std::invalid_argument("char_poly_hermitian: matrix is not Hermitian");
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  const GMatrix id = GMatrix::identity(n);
  GMatrix mk = id;
  for (std::size_t k = 1; k <= n; ++k) {
    GMatrix am = a * mk;
    GaussInt tr(0);
    for (std::size_t d = 0; d < n; ++d) tr += am(d, d);
    if (!tr.is_real()) throw std::logic_error("char_poly_hermitian: non-real trace");
    Integer kk(static_cast<long>(k));
    if (!detail::divisible(tr.re(), kk)) throw std::logic_error("char_poly_hermitian: inexact trace division");
    c[n - k] = -tr.re() / kk;
    mk = am + GaussInt(c[n - k]) * id;
  }
  return IntPolynomial{std::move(c)};
}

/// Gauss-Jordan over Q(i).
inline QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) throw SingularMatrixError(GaussInt(0));
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    const GaussRat pivot = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) = a(k, c) / pivot;
      inv(k, c) = inv(k, c) / pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || a(r, k).is_zero()) continue;
      const GaussRat f = a(r, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

inline QMatrix inverse(const GMatrix& m) { return inverse(to_rational(m)); }

/// Rank over Z[i]/(p).
inline std::size_t rank_mod_prime(const GMatrix& m, const GaussInt& p) {
  const ResidueField f(p);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<FieldElem> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = f.reduce(m(r, c));
  auto at = [&](std::size_t r, std::size_t c) -> FieldElem& { return a[r * cols + c]; };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p_row = rank;
    while (p_row < rows && ResidueField::is_zero(at(p_row, c))) ++p_row;
    if (p_row == rows) continue;
    for (std::size_t k = 0; k < cols; ++k) std::swap(at(rank, k), at(p_row, k));
    const FieldElem inv = f.inv(at(rank, c));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (ResidueField::is_zero(at(r, c))) continue;
      const FieldElem factor = f.mul(at(r, c), inv);
      for (std::size_t k = c; k < cols; ++k) at(r, k) = f.sub(at(r, k), f.mul(factor, at(rank, k)));
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Smith normal form over Z[i].

struct SnfResult {
  std::vector<GaussInt> d;  ///< elementary divisors, each in Gamma or zero
  GMatrix v1;               ///< input == v1 * diag(d) * v2
  GMatrix v2;
  GMatrix v2_inverse;

  GMatrix diagonal() const {
    GMatrix s(v1.cols(), v2.rows());
    for (std::size_t k = 0; k < d.size(); ++k) s(k, k) = d[k];
    return s;
  }
};

namespace detail {

// State M = v1 * a * v2 with v2 * v2inv = I; every operation keeps it.
struct SnfState {
  GMatrix a, v1, v2, v2inv;

  // row r += c * row s
  void add_row(std::size_t r, std::size_t s, const GaussInt& c) {
    for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) += c * a(s, k);
    for (std::size_t k = 0; k < v1.rows(); ++k) v1(k, s) -= c * v1(k, r);
  }
  // col r += c * col s
  void add_col(std::size_t r, std::size_t s, const GaussInt& c) {
    for (std::size_t k = 0; k < a.rows(); ++k) a(k, r) += c * a(k, s);
    for (std::size_t k = 0; k < v2.cols(); ++k) v2(s, k) -= c * v2(r, k);
    for (std::size_t k = 0; k < v2inv.rows(); ++k) v2inv(k, r) += c * v2inv(k, s);
  }
  void swap_rows(std::size_t r, std::size_t s) {
    a.swap_rows(r, s);
    v1.swap_cols(r, s);
  }
  void swap_cols(std::size_t r, std::size_t s) {
    a.swap_cols(r, s);
    v2.swap_rows(r, s);
    v2inv.swap_cols(r, s);
  }
  // row r *= u for a unit u
  void scale_row(std::size_t r, const GaussInt& u) {
    const GaussInt uinv = u.conj();
    for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) *= u;
    for (std::size_t k = 0; k < v1.rows(); ++k) v1(k, r) *= uinv;
  }
};

}  // namespace detail

/// Pivot is the nonzero entry of minimal norm, ties by (row, col).
inline SnfResult snf(const GMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  detail::SnfState st{m, GMatrix::identity(rows), GMatrix::identity(cols), GMatrix::identity(cols)};
  GMatrix& a = st.a;
  const std::size_t diag = std::min(rows, cols);
  std::vector<GaussInt> d;
  d.reserve(diag);

  std::size_t t = 0;
  for (; t < diag; ++t) {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      Integer best_norm;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          if (a(r, c).is_zero()) continue;
          Integer nn = norm(a(r, c));
          if (!best || nn < best_norm) {
            best = {r, c};
            best_norm = nn;
          }
        }
      if (!best) break;
      st.swap_rows(t, best->first);
      st.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t).is_zero()) continue;
        auto [q, rem] = euclidean_divmod(a(r, t), a(t, t));
        st.add_row(r, t, -q);
        if (!rem.is_zero()) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c).is_zero()) continue;
        auto [q, rem] = euclidean_divmod(a(t, c), a(t, t));
        st.add_col(c, t, -q);
        if (!rem.is_zero()) clean = false;
      }
      if (!clean) continue;

      std::optional<std::size_t> offender;
      for (std::size_t r = t + 1; r < rows && !offender; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (!divides(a(t, t), a(r, c))) {
            offender = r;
            break;
          }
      if (offender) {
        st.add_row(t, *offender, GaussInt(1));
        continue;
      }
      auto [unit, rep] = gamma_normalize(a(t, t));
      st.scale_row(t, unit.conj());
      break;
    }
    if (a(t, t).is_zero()) break;
    d.push_back(a(t, t));
  }
  while (d.size() < diag) d.emplace_back(0);
  return SnfResult{std::move(d), std::move(st.v1), std::move(st.v2), std::move(st.v2inv)};
}

/// Some z with M z = 0 (mod p^2) and z != 0 (mod p), present iff p^2 | d_n.
inline std::optional<std::vector<GaussInt>> solve_mod_p2_nontrivial(const GMatrix& m, const GaussInt& p) {
  require_square(m, "solve_mod_p2_nontrivial");
  if (!is_gaussian_prime(p)) throw std::domain_error("solve_mod_p2_nontrivial: modulus is not a Gaussian prime");
  if (m.rows() == 0) return std::nullopt;
  const SnfResult s = snf(m);
  if (!divides(p * p, s.d.back())) return std::nullopt;
  return s.v2_inverse.column(m.cols() - 1);
}

// ---------------------------------------------------------------------------
// Matrix text: one row per line, comma-separated Gaussian literals,
// blank lines and '#' comments ignored.

inline GMatrix parse_matrix(std::istream& in) {
  std::vector<std::vector<GaussInt>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<GaussInt> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(parse_gauss(cell));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": row length differs from first row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix file has no rows");
  std::vector<GaussInt> flat;
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return GMatrix(rows.size(), rows.front().size(), std::move(flat));
}

inline GMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

}  // namespace mixspec
