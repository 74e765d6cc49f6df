#pragma once

// Exhaustive census of self-converse mixed graphs up to isomorphism:
// enumeration over packed edge codes, generalized-spectrum buckets, DGS
// verdicts and the exhaustive level checks on transfer unitaries.

#include "mixspec/genspec.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace mixspec {

/// Two bits per pair, first pair in the most significant position, so
/// integer order is lexicographic order of the edge word.
using EdgeCode = std::uint64_t;

inline constexpr int kCensusMin = 2;
inline constexpr int kCensusMax = 6;
inline constexpr int kCensusLong = 6;

struct CensusOptions {
  unsigned jobs = 1;
  bool allow_long = false;
  std::ostream* progress = nullptr;
};

inline void check_census_range(int n, const CensusOptions& opt) {
  if (n < kCensusMin || n > kCensusMax)
    throw std::out_of_range("census order must be in [" + std::to_string(kCensusMin) + ", " +
                            std::to_string(kCensusMax) + "], got " + std::to_string(n));
  if (n >= kCensusLong && !opt.allow_long)
    throw std::invalid_argument("census at n=" + std::to_string(n) + " is long-running and must be enabled explicitly");
}

inline EdgeCode encode(const MixedGraph& g) {
  EdgeCode c = 0;
  for (Arc a : g.edge_word()) c = (c << 2) | static_cast<EdgeCode>(a);
  return c;
}

inline MixedGraph decode(int n, EdgeCode c) {
  const std::size_t m = pair_count(n);
  std::vector<Arc> w(m);
  for (std::size_t p = m; p-- > 0;) {
    w[p] = static_cast<Arc>(c & 3u);
    c >>= 2;
  }
  return MixedGraph(n, std::move(w));
}

inline std::string code_string(int n, EdgeCode c) { return std::to_string(n) + ":" + edge_word_string(decode(n, c)); }

/// Permutation action on packed codes for a fixed order n.
class CodeAction {
public:
  explicit CodeAction(int n) : n_(n), m_(pair_count(n)) {
    if (n < 1 || n > 8) throw std::out_of_range("CodeAction supports 1 <= n <= 8");
    std::vector<int> tau(static_cast<std::size_t>(n));
    std::iota(tau.begin(), tau.end(), 1);
    do {
      Entry e{};
      std::size_t t = 0;
      for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y, ++t) {
          const int u = tau[static_cast<std::size_t>(x - 1)], v = tau[static_cast<std::size_t>(y - 1)];
          e.shift[t] = shift_of(pair_index(n, std::min(u, v), std::max(u, v)));
          e.flip[t] = u > v;
        }
      actions_.push_back(e);
    } while (std::next_permutation(tau.begin(), tau.end()));
  }

  int order() const { return n_; }
  std::size_t pairs() const { return m_; }
  std::size_t size() const { return actions_.size(); }
  EdgeCode code_count() const { return EdgeCode{1} << (2 * m_); }

  static EdgeCode converse(EdgeCode c) {
    // digits 2 <-> 3: flip the low bit wherever the high bit is set
    return c ^ ((c >> 1) & 0x5555555555555555ULL);
  }

  /// True iff c is the least code in its isomorphism orbit.
  bool is_orbit_min(EdgeCode c) const {
    for (std::size_t k = 1; k < actions_.size(); ++k) {
      const Entry& e = actions_[k];
      for (std::size_t t = 0; t < m_; ++t) {
        unsigned v = digit(c, e.shift[t]);
        if (e.flip[t]) v = kFlip[v];
        const unsigned cur = digit(c, shift_of(t));
        if (v < cur) return false;
        if (v > cur) break;
      }
    }
    return true;
  }

  /// True iff some relabeling maps `from` onto `to`.
  bool in_orbit(EdgeCode from, EdgeCode to) const {
    for (const Entry& e : actions_) {
      bool same = true;
      for (std::size_t t = 0; t < m_ && same; ++t) {
        unsigned v = digit(from, e.shift[t]);
        if (e.flip[t]) v = kFlip[v];
        same = v == digit(to, shift_of(t));
      }
      if (same) return true;
    }
    return false;
  }

  EdgeCode orbit_min(EdgeCode c) const {
    EdgeCode best = c;
    for (const Entry& e : actions_) best = std::min(best, apply(e, c));
    return best;
  }

private:
  static constexpr std::array<unsigned, 4> kFlip{0, 1, 3, 2};
  struct Entry {
    std::array<std::uint8_t, 28> shift;
    std::array<bool, 28> flip;
  };

  unsigned shift_of(std::size_t p) const { return static_cast<unsigned>(2 * (m_ - 1 - p)); }
  static unsigned digit(EdgeCode c, unsigned shift) { return static_cast<unsigned>((c >> shift) & 3u); }

  EdgeCode apply(const Entry& e, EdgeCode c) const {
    EdgeCode out = 0;
    for (std::size_t t = 0; t < m_; ++t) {
      unsigned v = digit(c, e.shift[t]);
      if (e.flip[t]) v = kFlip[v];
      out = (out << 2) | v;
    }
    return out;
  }

  int n_;
  std::size_t m_;
  std::vector<Entry> actions_;
};

/// Orbit-minimal codes over all 4^C(n,2) codes, optionally restricted to
/// self-converse graphs. Disjoint contiguous ranges are scanned in parallel
/// and merged by sorting.
inline std::vector<EdgeCode> scan_classes(int n, bool self_converse_only, const CensusOptions& opt) {
  const CodeAction act(n);
  const EdgeCode total = act.code_count();
  const unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::vector<EdgeCode>> parts(jobs);

  auto work = [&](unsigned j) {
    const EdgeCode lo = total / jobs * j;
    const EdgeCode hi = j + 1 == jobs ? total : total / jobs * (j + 1);
    const EdgeCode tick = std::max<EdgeCode>(1, (hi - lo) / 4);
    auto& out = parts[j];
    for (EdgeCode c = lo; c < hi; ++c) {
      if (opt.progress && j == 0 && (c - lo) % tick == 0 && c != lo)
        *opt.progress << "  scan n=" << n << ": " << (100 * (c - lo) / (hi - lo)) << "%\n" << std::flush;
      if (!act.is_orbit_min(c)) continue;
      if (self_converse_only && !act.in_orbit(CodeAction::converse(c), c)) continue;
      out.push_back(c);
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  std::vector<EdgeCode> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  return all;
}

/// One representative (the orbit-minimal labeling) per isomorphism class
/// of self-converse mixed graphs on [n].
inline std::vector<MixedGraph> enumerate_self_converse(int n, const CensusOptions& opt = {}) {
  check_census_range(n, opt);
  std::vector<MixedGraph> out;
  for (EdgeCode c : scan_classes(n, true, opt)) out.push_back(decode(n, c));
  return out;
}

// ---------------------------------------------------------------------------

struct ClassRecord {
  EdgeCode code = 0;
  std::string name;  ///< canonical code string "<n>:<digits>"
  MixedGraph graph;
  GenSpectrum spectrum;
  WalkReport walk;
};

struct SpectrumBucket {
  GenSpectrum spectrum;
  std::vector<std::string> members;       ///< canonical codes
  std::vector<std::size_t> class_indices; ///< into Census::classes
};

struct Census {
  int n = 0;
  std::vector<ClassRecord> classes;     ///< sorted by code
  std::vector<SpectrumBucket> buckets;  ///< sorted by spectrum
};

inline Census run_census(int n, const CensusOptions& opt = {}) {
  check_census_range(n, opt);
  Census c;
  c.n = n;
  const auto codes = scan_classes(n, true, opt);
  if (opt.progress) *opt.progress << "  n=" << n << ": " << codes.size() << " classes, computing spectra\n";
  for (EdgeCode code : codes) {
    ClassRecord rec;
    rec.code = code;
    rec.name = code_string(n, code);
    rec.graph = decode(n, code);
    rec.spectrum = generalized_spectrum(rec.graph);
    rec.walk = walk_report(rec.graph);
    c.classes.push_back(std::move(rec));
  }
  std::map<GenSpectrum, SpectrumBucket> grouped;
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    auto& b = grouped[c.classes[k].spectrum];
    b.spectrum = c.classes[k].spectrum;
    b.members.push_back(c.classes[k].name);
    b.class_indices.push_back(k);
  }
  for (auto& [key, b] : grouped) c.buckets.push_back(std::move(b));
  return c;
}

inline std::vector<SpectrumBucket> spectrum_buckets(int n, const CensusOptions& opt = {}) {
  return run_census(n, opt).buckets;
}

/// A class is DGS iff no other self-converse class shares its generalized spectrum.
inline std::map<std::string, bool> dgs_verdicts(const Census& c) {
  std::map<std::string, bool> out;
  for (const auto& b : c.buckets)
    for (const auto& m : b.members) out[m] = b.members.size() == 1;
  return out;
}

inline std::map<std::string, bool> dgs_verdicts(int n, const CensusOptions& opt = {}) {
  return dgs_verdicts(run_census(n, opt));
}

// ---------------------------------------------------------------------------

/// num/den rounded half-up to 3 decimals, formatted "d.ddd".
inline std::string round3(std::size_t num, std::size_t den) {
  if (den == 0) throw std::domain_error("round3: zero denominator");
  const std::size_t milli = (2000 * num + den) / (2 * den);
  std::string frac = std::to_string(milli % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return std::to_string(milli / 1000) + "." + frac;
}

struct CensusRow {
  int n = 0;
  std::size_t class_count = 0;
  std::size_t dgs_count = 0;
  std::size_t condition_count = 0;

  std::string dgs_fraction() const { return round3(dgs_count, class_count); }
  std::string condition_fraction() const { return round3(condition_count, class_count); }
  std::string csv() const {
    return std::to_string(n) + "," + std::to_string(class_count) + "," + dgs_fraction() + "," + condition_fraction();
  }
};

inline CensusRow table_row(const Census& c) {
  CensusRow row;
  row.n = c.n;
  row.class_count = c.classes.size();
  for (const auto& b : c.buckets)
    if (b.members.size() == 1) ++row.dgs_count;
  for (const auto& r : c.classes)
    if (r.walk.condition_holds) ++row.condition_count;
  return row;
}

inline CensusRow table_row(int n, const CensusOptions& opt = {}) { return table_row(run_census(n, opt)); }

inline constexpr const char* kCsvHeader = "n,classes,dgs_fraction,condition_fraction";

inline void write_csv(std::ostream& out, const std::vector<CensusRow>& rows) {
  out << kCsvHeader << "\n";
  auto sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](const CensusRow& a, const CensusRow& b) { return a.n < b.n; });
  for (const auto& r : sorted) out << r.csv() << "\n";
}

inline void export_csv(const std::vector<CensusRow>& rows, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(f, rows);
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------

struct MainTheoremReport {
  int n = 0;
  std::size_t pairs_checked = 0;  ///< ordered pairs with a determined unitary
  std::size_t undetermined = 0;   ///< ordered pairs with singular walk matrices
  std::size_t condition_pairs = 0;
  std::size_t undirected_condition_pairs = 0;
  std::size_t level_two_decomposed = 0;
  std::map<std::string, std::size_t> level_counts;
  std::vector<std::string> violations;            ///< condition G with level outside {1, 1+i}
  std::vector<std::string> undirected_violations; ///< undirected condition G with level != 1 or H != G
  std::vector<std::string> shape_violations;      ///< level not of the form a or a(1+i)
  std::vector<std::string> other_violations;      ///< level does not divide d_n, or a non-isomorphic U of level 1
  std::vector<QMatrix> level_two_unitaries;

  bool ok() const {
    return violations.empty() && undirected_violations.empty() && shape_violations.empty() && other_violations.empty();
  }
};

inline MainTheoremReport verify_main_theorem(const Census& c) {
  MainTheoremReport rep;
  rep.n = c.n;
  for (const auto& b : c.buckets) {
    for (std::size_t gi : b.class_indices) {
      for (std::size_t hi : b.class_indices) {
        const ClassRecord& g = c.classes[gi];
        const ClassRecord& h = c.classes[hi];
        const std::string tag = g.name + " -> " + h.name;
        if (g.walk.det_w.is_zero() || h.walk.det_w.is_zero()) {
          if (g.walk.det_w.is_zero() != h.walk.det_w.is_zero())
            rep.other_violations.push_back(tag + ": only one walk matrix singular");
          ++rep.undetermined;
          continue;
        }
        const TransferUnitary t = transfer_unitary(g.graph, h.graph);
        ++rep.pairs_checked;
        rep.level_counts[to_string(t.level)]++;
        const std::string lvl = tag + ": level " + to_string(t.level);
        if (!level_is_real_shape(t.level)) rep.shape_violations.push_back(lvl);
        if (!divides(t.level, g.walk.snf_d.back())) rep.other_violations.push_back(lvl + " does not divide d_n");
        if (gi != hi && t.level == GaussInt(1)) rep.other_violations.push_back(lvl + " between non-isomorphic classes");
        if (t.level == GaussInt(1, 1)) {
          decompose_level_two(t.u);
          ++rep.level_two_decomposed;
          rep.level_two_unitaries.push_back(t.u);
        }
        if (g.walk.condition_holds) {
          ++rep.condition_pairs;
          if (!(t.level == GaussInt(1) || t.level == GaussInt(1, 1))) rep.violations.push_back(lvl);
          if (g.graph.undirected()) {
            ++rep.undirected_condition_pairs;
            if (t.level != GaussInt(1) || gi != hi) rep.undirected_violations.push_back(lvl);
          }
        }
      }
    }
  }
  return rep;
}

inline MainTheoremReport verify_main_theorem(int n, const CensusOptions& opt = {}) {
  return verify_main_theorem(run_census(n, opt));
}

struct ConjectureReport {
  int n = 0;
  std::size_t condition_classes = 0;
  std::size_t condition_dgs = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// Every class satisfying the square-free condition should be DGS.
inline ConjectureReport verify_conjecture(const Census& c) {
  ConjectureReport rep;
  rep.n = c.n;
  for (const auto& b : c.buckets)
    for (std::size_t k : b.class_indices) {
      if (!c.classes[k].walk.condition_holds) continue;
      ++rep.condition_classes;
      if (b.members.size() == 1) ++rep.condition_dgs;
      else rep.counterexamples.push_back(c.classes[k].name);
    }
  return rep;
}

inline ConjectureReport verify_conjecture(int n, const CensusOptions& opt = {}) {
  return verify_conjecture(run_census(n, opt));
}

/// Buckets holding more than one self-converse class.
inline std::vector<SpectrumBucket> find_mates(const Census& c) {
  std::vector<SpectrumBucket> out;
  for (const auto& b : c.buckets)
    if (b.members.size() > 1) out.push_back(b);
  return out;
}

// ---------------------------------------------------------------------------
// Searching all mixed graphs (not only self-converse ones).

/// Representatives of every isomorphism class on [n] with the given spectrum.
inline std::vector<MixedGraph> classes_with_spectrum(int n, const GenSpectrum& target, const CensusOptions& opt = {}) {
  if (n < 1 || n > 6) throw std::out_of_range("classes_with_spectrum supports 1 <= n <= 6");
  std::vector<MixedGraph> out;
  for (EdgeCode code : scan_classes(n, false, opt)) {
    MixedGraph g = decode(n, code);
    if (char_poly_hermitian(herm_adjacency(g)) != target.p_a) continue;
    if (char_poly_hermitian(complement_like_matrix(g)) != target.p_c) continue;
    out.push_back(std::move(g));
  }
  return out;
}

inline GenSpectrum example_one_spectrum() {
  // x^5 - 7x^3 - 4x^2 + 7x + 4 and x^5 - 13x^3 - 16x^2 + 5x + 4
  return {IntPolynomial::from({4, 7, -4, -7, 0, 1}), IntPolynomial::from({4, 5, -16, -13, 0, 1})};
}

struct ExamplePair {
  MixedGraph g;  ///< self-converse
  MixedGraph h;  ///< R-cospectral to g, not self-converse
};

/// The smallest-code pair (G, H) of 5-vertex graphs with the quoted
/// generalized spectrum, G self-converse with |det W(G)| = 68, H not
/// self-converse.
inline ExamplePair find_example_pair(int n = 5, const CensusOptions& opt = {}) {
  if (n != 5) throw std::invalid_argument("find_example_pair is defined for n = 5");
  const auto found = classes_with_spectrum(n, example_one_spectrum(), opt);
  std::optional<MixedGraph> g, h;
  for (const auto& x : found) {
    const bool sc = is_self_converse(x).has_value();
    if (sc && !g && norm(det(walk_matrix(x))) == 68 * 68) g = x;
    if (!sc && !h) h = x;
  }
  if (!g || !h) throw std::runtime_error("find_example_pair: no pair with the required spectrum was found");
  return {*g, *h};
}

}  // namespace mixspec
