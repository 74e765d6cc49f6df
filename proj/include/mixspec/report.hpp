#pragma once

// JSON emission for reports, bucket lists and census rows. Numeric values
// are exact: Gaussian literals as strings, polynomial coefficients as
// integers.

#include "mixspec/census.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace mixspec {

using json = nlohmann::json;

inline json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(static_cast<long>(j.get<std::int64_t>()));
}

inline json poly_json(const IntPolynomial& p) {
  json a = json::array();
  for (const auto& c : p.coefficients) a.push_back(integer_json(c));
  return a;
}

inline IntPolynomial poly_from_json(const json& j) {
  IntPolynomial p;
  for (const auto& c : j) p.coefficients.push_back(integer_from_json(c));
  return p;
}

inline json gauss_list_json(const std::vector<GaussInt>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_string(z));
  return a;
}

/// det_w, reduced, rank_1pi, snf, condition, charpoly_a, charpoly_c.
inline json walk_report_json(const WalkReport& w, const GenSpectrum& s) {
  json j;
  j["det_w"] = to_string(w.det_w);
  j["reduced"] = to_string(w.reduced);
  j["rank_1pi"] = w.rank_1pi;
  j["snf"] = gauss_list_json(w.snf_d);
  j["condition"] = w.condition_holds;
  j["charpoly_a"] = poly_json(s.p_a);
  j["charpoly_c"] = poly_json(s.p_c);
  return j;
}

inline json analyze_json(const MixedGraph& g) {
  json j = walk_report_json(walk_report(g), generalized_spectrum(g));
  j["n"] = g.order();
  const auto sc = is_self_converse(g);
  j["self_converse"] = sc.has_value();
  if (sc) j["self_converse_permutation"] = sc->image();
  return j;
}

inline json qmatrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json compare_json(const MixedGraph& g, const MixedGraph& h) {
  if (g.order() != h.order()) throw std::invalid_argument("compare: graphs differ in order");
  json j;
  const bool cosp = r_cospectral(g, h);
  const auto iso = isomorphic(g, h);
  j["r_cospectral"] = cosp;
  j["isomorphic"] = iso.has_value();
  if (iso) j["isomorphism"] = iso->image();
  if (!cosp) return j;
  try {
    const TransferUnitary t = transfer_unitary(g, h);
    json u;
    u["entries"] = qmatrix_json(t.u);
    u["level"] = to_string(t.level);
    u["level_in_1_1pi"] = t.level == GaussInt(1) || t.level == GaussInt(1, 1);
    j["unitary"] = std::move(u);
  } catch (const TransferError& e) {
    if (e.reason() != TransferError::Reason::SingularG && e.reason() != TransferError::Reason::SingularH) throw;
    j["unitary"] = "undetermined";
    j["unitary_reason"] = e.what();
  }
  return j;
}

inline json row_json(const CensusRow& r) {
  return {{"n", r.n},
          {"classes", r.class_count},
          {"dgs_count", r.dgs_count},
          {"condition_count", r.condition_count},
          {"dgs_fraction", r.dgs_fraction()},
          {"condition_fraction", r.condition_fraction()}};
}

inline json buckets_json(int n, const std::vector<SpectrumBucket>& buckets) {
  json arr = json::array();
  for (const auto& b : buckets) {
    arr.push_back({{"charpoly_a", poly_json(b.spectrum.p_a)},
                   {"charpoly_c", poly_json(b.spectrum.p_c)},
                   {"members", b.members}});
  }
  return {{"n", n}, {"buckets", std::move(arr)}};
}

/// Inverse of buckets_json; class_indices are not serialized.
inline std::vector<SpectrumBucket> buckets_from_json(const json& j) {
  std::vector<SpectrumBucket> out;
  for (const auto& b : j.at("buckets")) {
    SpectrumBucket s;
    s.spectrum.p_a = poly_from_json(b.at("charpoly_a"));
    s.spectrum.p_c = poly_from_json(b.at("charpoly_c"));
    s.members = b.at("members").get<std::vector<std::string>>();
    out.push_back(std::move(s));
  }
  return out;
}

inline void export_json(int n, const std::vector<SpectrumBucket>& buckets, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << buckets_json(n, buckets).dump(2) << "\n";
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace mixspec
