#pragma once

// Walk matrices, generalized spectra, transfer unitaries and their levels.

#include "mixspec/exactla.hpp"
#include "mixspec/mixedgraph.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixspec {

/// W(G) = [e, Ae, ..., A^{n-1} e].
inline GMatrix walk_matrix(const MixedGraph& g) {
  const GMatrix a = herm_adjacency(g);
  const std::size_t n = a.rows();
  GMatrix w(n, n);
  std::vector<GaussInt> col(n, GaussInt(1));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < n; ++r) w(r, k) = col[r];
    std::vector<GaussInt> next(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!a(r, c).is_zero()) next[r] += a(r, c) * col[c];
    col = std::move(next);
  }
  return w;
}

inline GaussInt power_of_two(int e) {
  Integer v = 1;
  v <<= static_cast<unsigned long>(e);
  return GaussInt(v);
}

struct WalkReport {
  GMatrix w;
  GaussInt det_w;
  GaussInt reduced;  ///< det_w / 2^{floor(n/2)}
  std::size_t rank_1pi = 0;
  std::vector<GaussInt> snf_d;
  bool condition_holds = false;
};

inline WalkReport walk_report(const MixedGraph& g) {
  WalkReport rep;
  rep.w = walk_matrix(g);
  rep.det_w = det(rep.w);
  auto reduced = try_exact_div(rep.det_w, power_of_two(g.order() / 2));
  if (!reduced) throw std::logic_error("2^floor(n/2) does not divide det W");
  rep.reduced = *std::move(reduced);
  rep.rank_1pi = rank_mod_prime(rep.w, GaussInt(1, 1));
  rep.snf_d = snf(rep.w).d;
  rep.condition_holds = !rep.det_w.is_zero() && is_square_free(rep.reduced);
  return rep;
}

/// det W != 0 and det W / 2^{floor(n/2)} square-free in Z[i].
inline bool satisfies_main_condition(const MixedGraph& g) {
  const GaussInt d = det(walk_matrix(g));
  if (d.is_zero()) return false;
  return is_square_free(exact_div(d, power_of_two(g.order() / 2)));
}

/// Characteristic polynomials of A and J - I - A.
struct GenSpectrum {
  IntPolynomial p_a;
  IntPolynomial p_c;

  friend bool operator==(const GenSpectrum&, const GenSpectrum&) = default;
  friend bool operator<(const GenSpectrum& x, const GenSpectrum& y) {
    if (x.p_a != y.p_a) return x.p_a < y.p_a;
    return x.p_c < y.p_c;
  }
};

inline GenSpectrum generalized_spectrum(const MixedGraph& g) {
  return {char_poly_hermitian(herm_adjacency(g)), char_poly_hermitian(complement_like_matrix(g))};
}

inline bool r_cospectral(const MixedGraph& g, const MixedGraph& h) {
  if (g.order() != h.order()) throw std::invalid_argument("r_cospectral: graphs differ in order");
  return generalized_spectrum(g) == generalized_spectrum(h);
}

// ---------------------------------------------------------------------------
// Levels.

inline bool is_unitary(const QMatrix& u) {
  return u.square() && u.adjoint() * u == QMatrix::identity(u.rows());
}

inline bool fixes_ones(const QMatrix& u) {
  for (std::size_t r = 0; r < u.rows(); ++r) {
    GaussRat s(0);
    for (std::size_t c = 0; c < u.cols(); ++c) s += u(r, c);
    if (s != GaussRat(1)) return false;
  }
  return true;
}

namespace detail {
inline bool integral_multiple(const GaussInt& s, const QMatrix& u) {
  for (const auto& x : u.data())
    if (!(GaussRat(s) * x).is_integral()) return false;
  return true;
}
}  // namespace detail

/// Gamma-normalized least multiplier making U integral: the lcm of the
/// Gaussian denominators of the entries. Minimality is re-checked by
/// dividing out every prime factor.
inline GaussInt level(const QMatrix& u) {
  if (!is_unitary(u)) throw std::invalid_argument("level: matrix is not unitary");
  GaussInt l(1);
  for (const auto& x : u.data()) l = gauss_lcm(l, x.gaussian_denominator());
  if (!detail::integral_multiple(l, u)) throw std::logic_error("level: lcm does not clear denominators");
  for (const auto& f : factor(l).factors)
    if (detail::integral_multiple(exact_div(l, f.prime), u)) throw std::logic_error("level: lcm is not minimal");
  return l;
}

/// Level has the shape a or a(1+i) for a positive integer a.
inline bool level_is_real_shape(const GaussInt& l) {
  return in_gamma(l) && (l.is_real() || l.re() == l.im());
}

struct TransferUnitary {
  QMatrix u;
  GaussInt level;
};

class TransferError : public std::runtime_error {
public:
  enum class Reason { NotCospectral, SingularG, SingularH, NotUnitary };
  TransferError(Reason r, const std::string& what) : std::runtime_error(what), reason_(r) {}
  Reason reason() const { return reason_; }

private:
  Reason reason_;
};

/// U = W(G) W(H)^{-1}, checked to satisfy U*U = I, Ue = e, U* A(G) U = A(H).
inline TransferUnitary transfer_unitary(const MixedGraph& g, const MixedGraph& h) {
  if (!r_cospectral(g, h))
    throw TransferError(TransferError::Reason::NotCospectral, "transfer_unitary: graphs are not R-cospectral");
  const GMatrix wg = walk_matrix(g), wh = walk_matrix(h);
  const GaussInt dg = det(wg), dh = det(wh);
  if (dg.is_zero() && dh.is_zero())
    throw TransferError(TransferError::Reason::SingularG, "transfer_unitary: both walk matrices are singular");
  // W(G)*W(G) = W(H)*W(H) for R-cospectral graphs, so |det| agrees.
  if (wg.adjoint() * wg != wh.adjoint() * wh) throw std::logic_error("transfer_unitary: walk Gram matrices disagree");
  if (norm(dg) != norm(dh)) throw std::logic_error("transfer_unitary: walk Gram determinants disagree");
  if (dg.is_zero()) throw TransferError(TransferError::Reason::SingularG, "transfer_unitary: W(G) is singular");
  if (dh.is_zero()) throw TransferError(TransferError::Reason::SingularH, "transfer_unitary: W(H) is singular");

  QMatrix u = to_rational(wg) * inverse(wh);
  if (!is_unitary(u)) throw TransferError(TransferError::Reason::NotUnitary, "transfer_unitary: U*U != I");
  if (!fixes_ones(u)) throw std::logic_error("transfer_unitary: Ue != e");
  if (u.adjoint() * to_rational(herm_adjacency(g)) * u != to_rational(herm_adjacency(h)))
    throw std::logic_error("transfer_unitary: U* A(G) U != A(H)");
  GaussInt l = level(u);
  return {std::move(u), std::move(l)};
}

// ---------------------------------------------------------------------------
// Level 1+i normal form.

inline QMatrix u0_block() {
  // (1/(1+i)) [[1, i], [i, 1]] = [[(1-i)/2, (1+i)/2], [(1+i)/2, (1-i)/2]]
  const GaussRat a(GaussInt(1, -1), Integer(2)), b(GaussInt(1, 1), Integer(2));
  return QMatrix{{a, b}, {b, a}};
}

/// k copies of U0 on the diagonal followed by I_s.
inline QMatrix block_normal_form(int k, int s) {
  if (k < 0 || s < 0) throw std::invalid_argument("block_normal_form: negative block count");
  const std::size_t n = static_cast<std::size_t>(2 * k + s);
  QMatrix u(n, n);
  const QMatrix b = u0_block();
  for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j)
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) u(2 * j + r, 2 * j + c) = b(r, c);
  for (std::size_t j = static_cast<std::size_t>(2 * k); j < n; ++j) u(j, j) = GaussRat(1);
  return u;
}

/// Row a of P U Q is row rows(a) of U; column b of P U Q is column cols(b).
struct LevelTwoDecomposition {
  Permutation rows;
  Permutation cols;
  int k = 0;

  QMatrix apply(const QMatrix& u) const {
    QMatrix out(u.rows(), u.cols());
    for (std::size_t a = 0; a < u.rows(); ++a)
      for (std::size_t b = 0; b < u.cols(); ++b)
        out(a, b) = u(static_cast<std::size_t>(rows(static_cast<int>(a + 1)) - 1),
                      static_cast<std::size_t>(cols(static_cast<int>(b + 1)) - 1));
    return out;
  }
  GMatrix row_matrix() const { return rows.matrix().transpose(); }  ///< P
  GMatrix col_matrix() const { return cols.matrix(); }              ///< Q
};

/// Peels off U0 blocks: the smallest-index row of (1+i)U with two nonzeros
/// is (1, i) up to column order, its two columns pair it with a second row,
/// and what remains is again unitary with row sums one.
inline LevelTwoDecomposition decompose_level_two(const QMatrix& u) {
  if (!fixes_ones(u)) throw std::invalid_argument("decompose_level_two: Ue != e");
  if (level(u) != GaussInt(1, 1)) throw std::invalid_argument("decompose_level_two: level is not 1+i");
  const std::size_t n = u.rows();
  const GaussRat scale(GaussInt(1, 1));
  GMatrix t(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      GaussRat x = scale * u(r, c);
      if (!x.is_integral()) throw std::logic_error("decompose_level_two: (1+i)U is not integral");
      t(r, c) = x.num();
    }

  std::vector<bool> row_free(n, true), col_free(n, true);
  std::vector<int> row_order, col_order;
  const GaussInt one(1), im(0, 1);
  int k = 0;
  for (;;) {
    std::optional<std::size_t> r1;
    std::vector<std::size_t> nz;
    for (std::size_t r = 0; r < n && !r1; ++r) {
      if (!row_free[r]) continue;
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < n; ++c)
        if (col_free[c] && !t(r, c).is_zero()) cols.push_back(c);
      if (cols.size() >= 2) {
        r1 = r;
        nz = std::move(cols);
      }
    }
    if (!r1) break;
    if (nz.size() != 2) throw std::logic_error("decompose_level_two: row has more than two nonzeros");
    std::size_t c1 = nz[0], c2 = nz[1];
    if (t(*r1, c1) == im && t(*r1, c2) == one) std::swap(c1, c2);
    if (!(t(*r1, c1) == one && t(*r1, c2) == im)) throw std::logic_error("decompose_level_two: row pattern is not (1, i)");
    std::optional<std::size_t> r2;
    for (std::size_t r = 0; r < n; ++r)
      if (r != *r1 && row_free[r] && !t(r, c1).is_zero()) {
        if (r2) throw std::logic_error("decompose_level_two: column has more than two nonzeros");
        r2 = r;
      }
    if (!r2 || t(*r2, c1) != im || t(*r2, c2) != one)
      throw std::logic_error("decompose_level_two: columns do not pair into a U0 block");
    for (std::size_t c = 0; c < n; ++c)
      if (c != c1 && c != c2 && col_free[c] && !t(*r2, c).is_zero())
        throw std::logic_error("decompose_level_two: paired row has extra nonzeros");
    row_free[*r1] = row_free[*r2] = false;
    col_free[c1] = col_free[c2] = false;
    row_order.push_back(static_cast<int>(*r1 + 1));
    row_order.push_back(static_cast<int>(*r2 + 1));
    col_order.push_back(static_cast<int>(c1 + 1));
    col_order.push_back(static_cast<int>(c2 + 1));
    ++k;
  }
  // The rest is a permutation matrix: each free row has its single 1 in a free column.
  for (std::size_t r = 0; r < n; ++r) {
    if (!row_free[r]) continue;
    std::optional<std::size_t> c1;
    for (std::size_t c = 0; c < n; ++c)
      if (col_free[c] && !t(r, c).is_zero()) c1 = c;
    if (!c1 || t(r, *c1) != GaussInt(1, 1)) throw std::logic_error("decompose_level_two: residual block is not a permutation");
    row_order.push_back(static_cast<int>(r + 1));
    col_order.push_back(static_cast<int>(*c1 + 1));
    col_free[*c1] = false;
  }

  LevelTwoDecomposition out{Permutation(row_order), Permutation(col_order), k};
  if (k < 1 || out.apply(u) != block_normal_form(k, static_cast<int>(n) - 2 * k))
    throw std::logic_error("decompose_level_two: result is not in block normal form");
  return out;
}

/// B = U_{k,s}* A U_{k,s}; true iff every entry of B is in {0, 1, i, -i}.
/// Whenever that holds, A == B is enforced.
inline bool undirected_rigidity_check(const GMatrix& a, int k, int s) {
  if (!a.square() || a.rows() != static_cast<std::size_t>(2 * k + s))
    throw std::invalid_argument("undirected_rigidity_check: dimension mismatch");
  for (const auto& x : a.data())
    if (!(x == GaussInt(0) || x == GaussInt(1))) throw std::invalid_argument("undirected_rigidity_check: A is not a 0/1 matrix");
  const QMatrix u = block_normal_form(k, s);
  const QMatrix qa = to_rational(a);
  const QMatrix b = u.adjoint() * qa * u;
  for (const auto& x : b.data()) {
    if (!x.is_integral()) return false;
    const GaussInt& z = x.num();
    if (!(z.is_zero() || z == GaussInt(1) || z == GaussInt(0, 1) || z == GaussInt(0, -1))) return false;
  }
  if (b != qa) throw std::logic_error("undirected_rigidity_check: B has entries in {0,1,i,-i} but differs from A");
  return true;
}

}  // namespace mixspec
