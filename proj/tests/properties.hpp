#pragma once

// Randomized invariant checks shared by the unit suites (small case counts)
// and the acceptance binary (full case counts). Each check returns how many
// cases ran and the first counterexample, if any.

#include "mixspec/census.hpp"

#include "oracles.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace props {

using namespace mixspec;

struct Outcome {
  std::size_t cases = 0;
  std::optional<std::string> failure;
  bool ok() const { return !failure; }
};

inline MixedGraph random_graph(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> d(0, 3);
  std::vector<Arc> w(pair_count(n));
  for (auto& a : w) a = static_cast<Arc>(d(rng));
  return MixedGraph(n, std::move(w));
}

inline Permutation random_perm(std::mt19937_64& rng, int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

// Self-converse samples: random relabelings of enumerated classes (n <= 5)
// and G + converse(G) glued by swap-invariant cross edges (n = 6, 8).
class SelfConverseSampler {
public:
  SelfConverseSampler() {
    for (int n = 2; n <= 5; ++n)
      for (auto& g : enumerate_self_converse(n)) pool_.push_back(std::move(g));
  }

  MixedGraph operator()(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> kind(0, 3);
    if (kind(rng) != 0) {
      std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
      const MixedGraph& g = pool_[pick(rng)];
      return relabel(g, random_perm(rng, g.order()));
    }
    std::uniform_int_distribution<int> half(3, 4);
    const int m = half(rng);
    const MixedGraph g = random_graph(rng, m);
    MixedGraph d(2 * m);
    for (int u = 1; u <= m; ++u)
      for (int v = u + 1; v <= m; ++v) {
        d.set(u, v, g.relation(u, v));
        d.set(m + u, m + v, reversed(g.relation(u, v)));
      }
    // the swap u <-> m+u maps {u, m+v} to {m+u, v}; add both or neither
    std::bernoulli_distribution coin(0.3);
    for (int u = 1; u <= m; ++u)
      for (int v = u; v <= m; ++v)
        if (coin(rng)) {
          d.add_edge(u, m + v);
          if (u != v) d.add_edge(v, m + u);
        }
    return relabel(d, random_perm(rng, 2 * m));
  }

private:
  std::vector<MixedGraph> pool_;
};

inline std::string describe(const MixedGraph& g) { return std::to_string(g.order()) + ":" + edge_word_string(g); }

inline Outcome run(std::size_t cases, const std::function<std::optional<std::string>(std::size_t)>& body) {
  Outcome o;
  for (std::size_t k = 0; k < cases; ++k) {
    ++o.cases;
    if (auto f = body(k)) {
      o.failure = "case " + std::to_string(k) + ": " + *f;
      break;
    }
  }
  return o;
}

// e* A^k e is even for 1 <= k <= 2n.
inline Outcome walk_sums_even(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const MixedGraph g = random_graph(rng, 1 + static_cast<int>(k % 8));
    const GMatrix a = herm_adjacency(g);
    const std::size_t n = a.rows();
    std::vector<GaussInt> v(n, GaussInt(1));
    for (std::size_t p = 1; p <= 2 * n; ++p) {
      std::vector<GaussInt> next(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) next[r] += a(r, c) * v[c];
      v = std::move(next);
      GaussInt s(0);
      for (const auto& x : v) s += x;
      if (!s.is_real() || !divides(GaussInt(2), s)) return describe(g) + " k=" + std::to_string(p);
    }
    return std::nullopt;
  });
}

// 2^floor(n/2) | det W and rank_{1+i} W <= ceil(n/2).
inline Outcome walk_divisibility_and_rank(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const int n = 1 + static_cast<int>(k % 8);
    const MixedGraph g = random_graph(rng, n);
    const GMatrix w = walk_matrix(g);
    if (!divides(power_of_two(n / 2), det(w))) return describe(g) + " power of two";
    const std::size_t r = rank_mod_prime(w, GaussInt(1, 1));
    if (r > static_cast<std::size_t>((n + 1) / 2)) return describe(g) + " rank bound";
    return std::nullopt;
  });
}

inline Outcome leading_columns_independent(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const MixedGraph g = random_graph(rng, 1 + static_cast<int>(k % 8));
    const GMatrix w = walk_matrix(g);
    const std::size_t r = rank_mod_prime(w, GaussInt(1, 1));
    // independence over GF(2): rank of the first r columns equals r
    if (r > 0 && rank_mod_prime(w.column_block(0, r), GaussInt(1, 1)) != r) return describe(g);
    return std::nullopt;
  });
}

// For self-converse G with r = rank_{1+i} W: conj(W) = P^{-1} W with P the
// self-converse permutation, det W real or imaginary, 2^{n-r} | det W,
// rank = ceil(n/2) when det W / 2^floor(n/2) is odd, and every SNF divisor
// is an associate of its conjugate with W* sharing the SNF of W.
struct SelfConverseFlags {
  bool theorem_two = true;
  bool power_of_two = true;
  bool rank_equality = true;
  bool conjugate_divisors = true;
};

inline Outcome self_converse_walk(std::size_t cases, std::uint64_t seed, const SelfConverseSampler& sample,
                                  SelfConverseFlags f = {}) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t) -> std::optional<std::string> {
    const MixedGraph g = sample(rng);
    const int n = g.order();
    const auto sigma = is_self_converse(g);
    if (!sigma) return describe(g) + " sampler produced a graph that is not self-converse";
    const GMatrix w = walk_matrix(g);
    const GaussInt d = det(w);
    if (f.theorem_two) {
      if (!(d.is_real() || d.is_imaginary())) return describe(g) + " det W neither real nor imaginary";
      if (sigma->matrix().transpose() * w != w.conj()) return describe(g) + " conj(W) != P^{-1} W";
    }
    const std::size_t r = rank_mod_prime(w, GaussInt(1, 1));
    if (f.power_of_two && !divides(power_of_two(n - static_cast<int>(r)), d))
      return describe(g) + " 2^(n-r) does not divide det W";
    if (f.rank_equality && !d.is_zero()) {
      const GaussInt reduced = exact_div(d, power_of_two(n / 2));
      if (parity(reduced) == Parity::Odd && r != static_cast<std::size_t>((n + 1) / 2))
        return describe(g) + " odd reduced determinant but rank below ceil(n/2)";
    }
    if (f.conjugate_divisors) {
      const auto dd = snf(w).d;
      for (const auto& x : dd)
        if (!x.is_zero() && gamma_rep(x.conj()) != x) return describe(g) + " divisor " + to_string(x) + " not self-conjugate";
      if (snf(w.adjoint()).d != dd) return describe(g) + " W* has a different SNF";
    }
    return std::nullopt;
  });
}

// solve_mod_p2_nontrivial agrees with exhaustive residue search on 3x3
// matrices; the inert prime 3 is sampled sparsely because its search space
// is 81^3 vectors.
inline Outcome lift_solution_oracle(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const GaussInt primes[] = {GaussInt(1, 1), GaussInt(2, 1), GaussInt(1, 2), GaussInt(3)};
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const GaussInt& p = primes[k % 97 == 0 ? 3 : k % 3];
    GMatrix m = oracle::random_matrix(rng, 3, 2);
    if (k % 4 == 0) {
      // bias toward p^2 | d_3
      GMatrix d = GMatrix::identity(3);
      d(2, 2) = p * p * oracle::random_gauss(rng, 1);
      if (k % 8 == 0) d(1, 1) = p;
      m = oracle::random_unimodular(rng, 3, 5) * d * oracle::random_unimodular(rng, 3, 5);
    }
    const auto z = solve_mod_p2_nontrivial(m, p);
    const bool brute = oracle::exists_lift_solution(m, p);
    std::ostringstream tag;
    tag << "p=" << p << " M=" << to_string(m(0, 0)) << "," << to_string(m(0, 1)) << ",...";
    if (z.has_value() != brute) return tag.str() + " solver/oracle disagree";
    if (z.has_value() != divides(p * p, snf(m).d.back())) return tag.str() + " disagrees with p^2 | d_n";
    if (z) {
      bool nonzero = false;
      for (const auto& x : *z) nonzero = nonzero || !divides(p, x);
      if (!nonzero) return tag.str() + " solution is 0 mod p";
      for (std::size_t r = 0; r < 3; ++r) {
        GaussInt s(0);
        for (std::size_t c = 0; c < 3; ++c) s += m(r, c) * (*z)[c];
        if (!divides(p * p, s)) return tag.str() + " M z != 0 mod p^2";
      }
    }
    return std::nullopt;
  });
}

// v1 diag(d) v2 = M, unimodular factors, d_k | d_{k+1}, prod d ~ det M.
inline Outcome snf_contract(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const std::size_t n = 1 + k % 5;
    GMatrix m = oracle::random_matrix(rng, n, 7);
    if (k % 6 == 0 && n > 1) {
      // rank-deficient: duplicate a row
      for (std::size_t c = 0; c < n; ++c) m(n - 1, c) = m(0, c);
    }
    const SnfResult s = snf(m);
    if (s.v1 * s.diagonal() * s.v2 != m) return std::string("reconstruction");
    if (!det(s.v1).is_unit() || !det(s.v2).is_unit()) return std::string("unimodularity");
    if (s.v2 * s.v2_inverse != GMatrix::identity(n)) return std::string("v2 inverse");
    GaussInt prod(1);
    for (std::size_t t = 0; t < n; ++t) {
      if (!s.d[t].is_zero() && !in_gamma(s.d[t])) return std::string("divisor outside Gamma");
      if (t + 1 < n && !s.d[t + 1].is_zero() && (s.d[t].is_zero() || !divides(s.d[t], s.d[t + 1])))
        return std::string("divisor chain");
      prod *= s.d[t];
    }
    const GaussInt dm = det(m);
    if (dm.is_zero() != prod.is_zero() || (!dm.is_zero() && gamma_rep(dm) != gamma_rep(prod)))
      return std::string("product of divisors");
    return std::nullopt;
  });
}

// p(A) = 0 for p = det(xI - A), A Hermitian, n <= 5.
inline Outcome cayley_hamilton(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const std::size_t n = 1 + k % 5;
    GMatrix a = oracle::random_mixed_adjacency(rng, n);
    if (k % 3 == 0) {
      // general Hermitian with larger entries and a real diagonal
      for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = GaussInt(oracle::random_gauss(rng, 5).re());
        for (std::size_t c = r + 1; c < n; ++c) {
          a(r, c) = oracle::random_gauss(rng, 5);
          a(c, r) = a(r, c).conj();
        }
      }
    }
    const IntPolynomial p = char_poly_hermitian(a);
    if (p.degree() != static_cast<int>(n) || !p.monic()) return std::string("shape");
    if (p.evaluate(a) != GMatrix(n, n)) return std::string("p(A) != 0");
    if (k % 5 == 0) {
      Integer v = 0;
      for (int d = p.degree(); d >= 0; --d) v = v * 2 + p.coefficients[static_cast<std::size_t>(d)];
      if (GaussInt(v) != oracle::char_poly_at(a, 2)) return std::string("value at 2 disagrees with Leibniz");
    }
    return std::nullopt;
  });
}

// parse(serialize(G)) = G, graph_from_code(canonical_code(G)) ~ G, and the
// code of a random relabeling equals the code of G.
inline Outcome text_and_code_round_trip(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t k) -> std::optional<std::string> {
    const int n = 1 + static_cast<int>(k % 7);
    const MixedGraph g = random_graph(rng, n);
    if (parse_graph(serialize_graph(g)) != g) return describe(g) + " text round trip";
    if (graph_from_code(std::to_string(n) + ":" + edge_word_string(g)) != g)
      return describe(g) + " edge word round trip";
    const std::string code = canonical_code(g);
    if (code != canonical_code(relabel(g, random_perm(rng, n)))) return describe(g) + " code not invariant";
    if (!isomorphic(graph_from_code(code), g)) return describe(g) + " code graph not isomorphic";
    const GaussInt z = oracle::random_gauss(rng, 1000);
    if (parse_gauss(to_string(z)) != z) return "literal " + to_string(z);
    return std::nullopt;
  });
}

// Level of every census-discovered transfer unitary is a or a(1+i).
struct LevelShape {
  std::size_t unitaries = 0;
  std::map<std::string, std::size_t> levels;
  std::vector<std::string> violations;
};

inline LevelShape census_level_shapes(const std::vector<Census>& censuses) {
  LevelShape out;
  for (const auto& c : censuses)
    for (const auto& b : c.buckets)
      for (std::size_t gi : b.class_indices)
        for (std::size_t hi : b.class_indices) {
          const auto& g = c.classes[gi];
          const auto& h = c.classes[hi];
          if (g.walk.det_w.is_zero() || h.walk.det_w.is_zero()) continue;
          const TransferUnitary t = transfer_unitary(g.graph, h.graph);
          ++out.unitaries;
          ++out.levels[to_string(t.level)];
          if (!level_is_real_shape(t.level)) out.violations.push_back(g.name + " -> " + h.name);
        }
  return out;
}

// Randomized instances of the level-two normal form: P0 U_{k,s} Q0 for random
// permutations is decomposed back to U_{k,s}.
inline Outcome level_two_recovery(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run(cases, [&](std::size_t t) -> std::optional<std::string> {
    const int k = 1 + static_cast<int>(t % 3);
    const int s = static_cast<int>((t / 3) % 3);
    const int n = 2 * k + s;
    const QMatrix base = block_normal_form(k, s);
    const QMatrix p0 = to_rational(random_perm(rng, n).matrix());
    const QMatrix q0 = to_rational(random_perm(rng, n).matrix());
    const QMatrix u = p0 * base * q0;
    const LevelTwoDecomposition d = decompose_level_two(u);
    if (d.k != k) return "k=" + std::to_string(k) + " s=" + std::to_string(s) + " recovered k=" + std::to_string(d.k);
    if (d.apply(u) != base) return std::string("apply(U) != U_{k,s}");
    if (to_rational(d.row_matrix()) * u * to_rational(d.col_matrix()) != base) return std::string("P U Q != U_{k,s}");
    return std::nullopt;
  });
}

}  // namespace props
