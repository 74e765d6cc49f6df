#pragma once

// Slow reference implementations used to cross-check the library. Nothing
// here shares code paths with include/mixspec beyond the data types.

#include "mixspec/exactla.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using mixspec::GaussInt;
using mixspec::GMatrix;
using mixspec::Integer;

// Small Gaussian integers on machine words.
struct G64 {
  std::int64_t a = 0, b = 0;
  friend G64 operator+(G64 x, G64 y) { return {x.a + y.a, x.b + y.b}; }
  friend G64 operator*(G64 x, G64 y) { return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a}; }
};

inline G64 to64(const GaussInt& z) { return {z.re().get_si(), z.im().get_si()}; }

// q | z, tested as N(q) | z * conj(q)
inline bool divides64(G64 q, G64 z) {
  const std::int64_t n = q.a * q.a + q.b * q.b;
  const G64 w = z * G64{q.a, -q.b};
  return w.a % n == 0 && w.b % n == 0;
}

// Complete residue system of Z[i]/(q) by scanning a box and keeping one
// element per class.
inline std::vector<G64> residues(G64 q) {
  const std::int64_t n = q.a * q.a + q.b * q.b;
  std::vector<G64> reps;
  const std::int64_t lim = static_cast<std::int64_t>(n);
  for (std::int64_t x = 0; x < lim && static_cast<std::int64_t>(reps.size()) < n; ++x)
    for (std::int64_t y = 0; y < lim && static_cast<std::int64_t>(reps.size()) < n; ++y) {
      G64 z{x, y};
      bool fresh = true;
      for (const auto& r : reps)
        if (divides64(q, G64{z.a - r.a, z.b - r.b})) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(z);
    }
  return reps;
}

// Exhaustive search for z with M z = 0 (mod p^2), z != 0 (mod p).
inline bool exists_lift_solution(const GMatrix& m, const GaussInt& p) {
  const G64 p64 = to64(p);
  const G64 p2 = p64 * p64;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::vector<G64>> cache;
  auto it = cache.find({p2.a, p2.b});
  if (it == cache.end()) it = cache.emplace(std::make_pair(p2.a, p2.b), residues(p2)).first;
  const auto& reps = it->second;
  const std::size_t n = m.cols();
  std::vector<G64> mm(m.rows() * n);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) mm[r * n + c] = to64(m(r, c));
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::size_t k = 0;
    while (k < n && ++idx[k] == reps.size()) idx[k++] = 0;
    if (k == n) return false;
    bool nonzero_mod_p = false;
    for (std::size_t c = 0; c < n; ++c) nonzero_mod_p = nonzero_mod_p || !divides64(p64, reps[idx[c]]);
    if (!nonzero_mod_p) continue;
    bool ok = true;
    for (std::size_t r = 0; r < m.rows() && ok; ++r) {
      G64 s;
      for (std::size_t c = 0; c < n; ++c) s = s + mm[r * n + c] * reps[idx[c]];
      ok = divides64(p2, s);
    }
    if (ok) return true;
  }
}

// Leibniz expansion over all permutations.
inline GaussInt leibniz_det(const GMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GaussInt total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    GaussInt term(1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// det(xI - A) at an integer point.
inline GaussInt char_poly_at(const GMatrix& a, long x) {
  GMatrix m = a;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = (r == c ? GaussInt(x) : GaussInt(0)) - a(r, c);
  return leibniz_det(m);
}

inline GaussInt random_gauss(std::mt19937_64& rng, long lim) {
  std::uniform_int_distribution<long> d(-lim, lim);
  return GaussInt(d(rng), d(rng));
}

inline GMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lim) {
  GMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = random_gauss(rng, lim);
  return m;
}

// Entries in {0, 1, i, -i} placed Hermitian with zero diagonal.
inline GMatrix random_mixed_adjacency(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 3);
  GMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      const int k = d(rng);
      const GaussInt z = k == 0 ? GaussInt(0) : k == 1 ? GaussInt(1) : k == 2 ? GaussInt(0, 1) : GaussInt(0, -1);
      m(r, c) = z;
      m(c, r) = z.conj();
    }
  return m;
}

// Random unimodular matrix as a product of elementary operations.
inline GMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps) {
  GMatrix u = GMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (int s = 0; s < steps; ++s) {
    const std::size_t r = pick(rng), t = pick(rng);
    if (r == t) continue;
    const GaussInt c = random_gauss(rng, 1);
    for (std::size_t k = 0; k < n; ++k) u(r, k) += c * u(t, k);
  }
  return u;
}

}  // namespace oracle
