#pragma once

// Mixed graphs on vertices 1..n: every unordered pair {u, v} carries no
// edge, an undirected edge, or one arc.

#include "mixspec/exactla.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixspec {

/// Relation on a pair u < v. Forward is u -> v, Backward is v -> u.
enum class Arc : std::uint8_t { None = 0, Undirected = 1, Forward = 2, Backward = 3 };

inline Arc reversed(Arc a) {
  switch (a) {
    case Arc::Forward: return Arc::Backward;
    case Arc::Backward: return Arc::Forward;
    default: return a;
  }
}

inline constexpr int kSearchBound = 9;

inline std::size_t pair_count(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

/// Position of {u, v} (1-based, u < v) in lexicographic pair order.
inline std::size_t pair_index(int n, int u, int v) {
  return static_cast<std::size_t>((u - 1) * (2 * n - u) / 2 + (v - u - 1));
}

class MixedGraph {
public:
  MixedGraph() = default;
  explicit MixedGraph(int n) : n_(n), pairs_(pair_count(n), Arc::None) {
    if (n < 1) throw std::invalid_argument("mixed graph needs at least one vertex");
  }
  MixedGraph(int n, std::vector<Arc> word) : n_(n), pairs_(std::move(word)) {
    if (n < 1) throw std::invalid_argument("mixed graph needs at least one vertex");
    if (pairs_.size() != pair_count(n)) throw std::invalid_argument("edge word length mismatch");
  }

  int order() const { return n_; }
  const std::vector<Arc>& edge_word() const { return pairs_; }

  /// Relation read from u's side: Forward means u -> v regardless of u < v.
  Arc relation(int u, int v) const {
    check(u, v);
    Arc a = pairs_[pair_index(n_, std::min(u, v), std::max(u, v))];
    return u < v ? a : reversed(a);
  }

  void set(int u, int v, Arc a) {
    check(u, v);
    pairs_[pair_index(n_, std::min(u, v), std::max(u, v))] = u < v ? a : reversed(a);
  }
  void add_edge(int u, int v) { set(u, v, Arc::Undirected); }
  void add_arc(int from, int to) { set(from, to, Arc::Forward); }

  bool undirected() const {
    return std::none_of(pairs_.begin(), pairs_.end(),
                        [](Arc a) { return a == Arc::Forward || a == Arc::Backward; });
  }

  friend bool operator==(const MixedGraph&, const MixedGraph&) = default;

private:
  void check(int u, int v) const {
    if (u < 1 || v < 1 || u > n_ || v > n_) throw std::out_of_range("vertex out of range");
    if (u == v) throw std::invalid_argument("self-loop");
  }

  int n_ = 0;
  std::vector<Arc> pairs_;
};

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size() + 1, false);
    for (int x : image_) {
      if (x < 1 || x > static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(x)])
        throw std::invalid_argument("not a permutation");
      seen[static_cast<std::size_t>(x)] = true;
    }
  }
  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int x) const { return image_[static_cast<std::size_t>(x - 1)]; }
  const std::vector<int>& image() const { return image_; }

  Permutation inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t k = 0; k < image_.size(); ++k) inv[static_cast<std::size_t>(image_[k] - 1)] = static_cast<int>(k + 1);
    return Permutation(std::move(inv));
  }

  /// P with P e_j = e_{sigma(j)}.
  GMatrix matrix() const {
    const std::size_t n = image_.size();
    GMatrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) p(static_cast<std::size_t>(image_[j] - 1), j) = GaussInt(1);
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> image_;
};

inline GaussInt arc_value(Arc a) {
  switch (a) {
    case Arc::Undirected: return {1, 0};
    case Arc::Forward: return {0, 1};
    case Arc::Backward: return {0, -1};
    default: return {0, 0};
  }
}

inline GMatrix herm_adjacency(const MixedGraph& g) {
  const int n = g.order();
  GMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v) a(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1)) = arc_value(g.relation(u, v));
  return a;
}

/// J - I - A(G).
inline GMatrix complement_like_matrix(const MixedGraph& g) {
  const GMatrix a = herm_adjacency(g);
  GMatrix c(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) c(r, k) = (r == k ? GaussInt(0) : GaussInt(1)) - a(r, k);
  return c;
}

inline MixedGraph converse(const MixedGraph& g) {
  std::vector<Arc> w = g.edge_word();
  for (Arc& a : w) a = reversed(a);
  return MixedGraph(g.order(), std::move(w));
}

/// sigma . G: every relation of u, v in G moves to sigma(u), sigma(v).
inline MixedGraph relabel(const MixedGraph& g, const Permutation& sigma) {
  const int n = g.order();
  if (sigma.size() != n) throw std::invalid_argument("relabel: permutation size mismatch");
  MixedGraph h(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) h.set(sigma(u), sigma(v), g.relation(u, v));
  return h;
}

namespace detail {

inline void guard_order(int n, const char* what) {
  if (n > kSearchBound)
    throw std::length_error(std::string(what) + ": order " + std::to_string(n) + " exceeds search bound " +
                            std::to_string(kSearchBound));
}

struct VertexSignature {
  int undirected = 0, out = 0, in = 0;
  friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
};

inline std::vector<VertexSignature> signatures(const MixedGraph& g) {
  std::vector<VertexSignature> s(static_cast<std::size_t>(g.order()));
  for (int u = 1; u <= g.order(); ++u)
    for (int v = 1; v <= g.order(); ++v) {
      if (u == v) continue;
      switch (g.relation(u, v)) {
        case Arc::Undirected: ++s[static_cast<std::size_t>(u - 1)].undirected; break;
        case Arc::Forward: ++s[static_cast<std::size_t>(u - 1)].out; break;
        case Arc::Backward: ++s[static_cast<std::size_t>(u - 1)].in; break;
        default: break;
      }
    }
  return s;
}

// Backtracking over sigma with relation(H, a, b) == relation(G, sigma a, sigma b),
// pruned by per-vertex degree signatures.
inline bool extend(const MixedGraph& g, const MixedGraph& h, const std::vector<VertexSignature>& sg,
                   const std::vector<VertexSignature>& sh, std::vector<int>& sigma, std::vector<bool>& used, int a) {
  const int n = g.order();
  if (a > n) return true;
  for (int x = 1; x <= n; ++x) {
    if (used[static_cast<std::size_t>(x)]) continue;
    if (!(sg[static_cast<std::size_t>(x - 1)] == sh[static_cast<std::size_t>(a - 1)])) continue;
    bool ok = true;
    for (int b = 1; b < a && ok; ++b)
      ok = h.relation(b, a) == g.relation(sigma[static_cast<std::size_t>(b - 1)], x);
    if (!ok) continue;
    sigma[static_cast<std::size_t>(a - 1)] = x;
    used[static_cast<std::size_t>(x)] = true;
    if (extend(g, h, sg, sh, sigma, used, a + 1)) return true;
    used[static_cast<std::size_t>(x)] = false;
  }
  return false;
}

}  // namespace detail

/// sigma with P^T A(G) P = A(H), i.e. A(H)[a][b] = A(G)[sigma a][sigma b].
inline std::optional<Permutation> isomorphic(const MixedGraph& g, const MixedGraph& h) {
  if (g.order() != h.order()) throw std::invalid_argument("isomorphic: graphs differ in order");
  detail::guard_order(g.order(), "isomorphic");
  const auto sg = detail::signatures(g);
  const auto sh = detail::signatures(h);
  {
    auto key = [](const detail::VertexSignature& s) { return std::array<int, 3>{s.undirected, s.out, s.in}; };
    std::vector<std::array<int, 3>> kg, kh;
    for (const auto& s : sg) kg.push_back(key(s));
    for (const auto& s : sh) kh.push_back(key(s));
    std::sort(kg.begin(), kg.end());
    std::sort(kh.begin(), kh.end());
    if (kg != kh) return std::nullopt;
  }
  std::vector<int> sigma(static_cast<std::size_t>(g.order()));
  std::vector<bool> used(static_cast<std::size_t>(g.order()) + 1, false);
  if (!detail::extend(g, h, sg, sh, sigma, used, 1)) return std::nullopt;
  return Permutation(std::move(sigma));
}

/// sigma with A(G^T) = P^{-1} A(G) P, if G is self-converse.
inline std::optional<Permutation> is_self_converse(const MixedGraph& g) {
  detail::guard_order(g.order(), "is_self_converse");
  return isomorphic(g, converse(g));
}

/// Canonical edge word "<n>:<digits>", one digit per pair in lexicographic
/// order (0 none, 1 undirected, 2 forward, 3 backward), minimized over all
/// relabelings. Equal codes iff isomorphic.
inline std::string canonical_code(const MixedGraph& g) {
  const int n = g.order();
  detail::guard_order(n, "canonical_code");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::string best;
  std::string word(pair_count(n), '0');
  do {
    // word of sigma^{-1} . G at pair (x, y) is relation(G, perm[x], perm[y])
    std::size_t k = 0;
    bool worse = false;
    for (int x = 1; x <= n && !worse; ++x)
      for (int y = x + 1; y <= n; ++y, ++k) {
        word[k] = static_cast<char>('0' + static_cast<int>(g.relation(perm[static_cast<std::size_t>(x - 1)],
                                                                      perm[static_cast<std::size_t>(y - 1)])));
        if (!best.empty()) {
          // prefix comparison lets us abandon a relabeling early
          if (word[k] > best[k]) {
            worse = true;
            break;
          }
          if (word[k] < best[k]) {
            best.clear();
          }
        }
      }
    if (!worse && (best.empty() || word < best)) best = word;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::to_string(n) + ":" + best;
}

inline std::string edge_word_string(const MixedGraph& g) {
  std::string s;
  for (Arc a : g.edge_word()) s.push_back(static_cast<char>('0' + static_cast<int>(a)));
  return s;
}

/// Inverse of canonical_code / edge_word_string ("<n>:<digits>").
inline MixedGraph graph_from_code(const std::string& code) {
  auto colon = code.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("graph code lacks ':'");
  int n = std::stoi(code.substr(0, colon));
  std::string digits = code.substr(colon + 1);
  if (digits.size() != pair_count(n)) throw std::invalid_argument("graph code length mismatch");
  std::vector<Arc> w;
  for (char c : digits) {
    if (c < '0' || c > '3') throw std::invalid_argument("graph code digit out of range");
    w.push_back(static_cast<Arc>(c - '0'));
  }
  return MixedGraph(n, std::move(w));
}

// ---------------------------------------------------------------------------
// Graph text format.

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

inline MixedGraph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::optional<MixedGraph> g;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!g) {
      std::string joined;
      for (const auto& t : tok) joined += t;
      if (joined.rfind("n=", 0) != 0) throw ParseError(lineno, "expected 'n=<positive integer>'");
      const std::string num = joined.substr(2);
      if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(lineno, "malformed vertex count '" + num + "'");
      int n = 0;
      try {
        n = std::stoi(num);
      } catch (const std::exception&) {
        throw ParseError(lineno, "vertex count out of range");
      }
      if (n < 1) throw ParseError(lineno, "vertex count must be positive");
      g.emplace(n);
      seen.assign(pair_count(n), false);
      continue;
    }

    if (tok.size() != 3) throw ParseError(lineno, "expected 'u - v', 'u > v' or 'u < v'");
    auto vertex = [&](const std::string& t) {
      if (t.find_first_not_of("0123456789") != std::string::npos) throw ParseError(lineno, "malformed vertex '" + t + "'");
      int v = 0;
      try {
        v = std::stoi(t);
      } catch (const std::exception&) {
        throw ParseError(lineno, "vertex out of range");
      }
      if (v < 1 || v > g->order()) throw ParseError(lineno, "vertex " + t + " out of range");
      return v;
    };
    const int u = vertex(tok[0]);
    const int v = vertex(tok[2]);
    Arc a;
    if (tok[1] == "-") a = Arc::Undirected;
    else if (tok[1] == ">") a = Arc::Forward;
    else if (tok[1] == "<") a = Arc::Backward;
    else throw ParseError(lineno, "unknown edge symbol '" + tok[1] + "'");
    if (u == v) throw ParseError(lineno, "self-loop at vertex " + tok[0]);
    const std::size_t idx = pair_index(g->order(), std::min(u, v), std::max(u, v));
    if (seen[idx]) throw ParseError(lineno, "duplicate pair {" + tok[0] + ", " + tok[2] + "}");
    seen[idx] = true;
    g->set(u, v, a);
  }
  if (!g) throw ParseError(lineno, "missing 'n=' header");
  return *std::move(g);
}

inline MixedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline std::string serialize_graph(const MixedGraph& g) {
  std::ostringstream out;
  out << "n=" << g.order() << "\n";
  for (int u = 1; u <= g.order(); ++u)
    for (int v = u + 1; v <= g.order(); ++v) {
      switch (g.relation(u, v)) {
        case Arc::Undirected: out << u << " - " << v << "\n"; break;
        case Arc::Forward: out << u << " > " << v << "\n"; break;
        case Arc::Backward: out << u << " < " << v << "\n"; break;
        default: break;
      }
    }
  return out.str();
}

}  // namespace mixspec
