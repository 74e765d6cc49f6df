#pragma once

// Subcommand bodies for the mixspec tool. Each returns the process exit
// code: 0 success, 1 assertion or theorem violation, 2 usage or parse error.

#include "mixspec/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

namespace mixspec::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsage = 2;

inline constexpr const char* kJobsEnv = "MIXSPEC_JOBS";

inline unsigned default_jobs() {
  if (const char* v = std::getenv(kJobsEnv)) {
    try {
      const long j = std::stol(v);
      if (j >= 1) return static_cast<unsigned>(j);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline MixedGraph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline int analyze(const std::string& path, std::ostream& out, std::ostream& err) {
  MixedGraph g;
  try {
    g = load_graph(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    out << analyze_json(g).dump(2) << "\n";
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

inline int compare(const std::string& path_g, const std::string& path_h, std::ostream& out, std::ostream& err) {
  MixedGraph g, h;
  try {
    g = load_graph(path_g);
    h = load_graph(path_h);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (g.order() != h.order()) {
    err << "error: graphs differ in order (" << g.order() << " vs " << h.order() << ")\n";
    return kUsage;
  }
  try {
    out << compare_json(g, h).dump(2) << "\n";
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  }
  return kOk;
}

inline int snf(const std::string& path, std::ostream& out, std::ostream& err) {
  GMatrix m;
  try {
    m = parse_matrix(read_file(path));
  } catch (const std::exception& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return kUsage;
  }
  if (!m.square()) {
    err << "error: " << path << ": matrix is not square\n";
    return kUsage;
  }
  const SnfResult s = mixspec::snf(m);
  for (std::size_t k = 0; k < s.d.size(); ++k) out << (k ? "," : "") << to_string(s.d[k]);
  out << "\n";
  const bool unimodular = det(s.v1).is_unit() && det(s.v2).is_unit();
  const bool reconstructs = s.v1 * s.diagonal() * s.v2 == m;
  out << "unimodular: " << (unimodular ? "true" : "false") << "\n";
  out << "reconstructs: " << (reconstructs ? "true" : "false") << "\n";
  return unimodular && reconstructs ? kOk : kViolation;
}

struct CensusArgs {
  int n_from = 0;
  int n_to = 0;
  unsigned jobs = 1;
  bool allow_long = false;
  std::string out_dir;
  std::string format = "csv";
  bool quiet = false;
};

inline int census(const CensusArgs& a, std::ostream& out, std::ostream& err) {
  if (a.format != "csv" && a.format != "json") {
    err << "error: unknown format '" << a.format << "'\n";
    return kUsage;
  }
  const int to = a.n_to ? a.n_to : a.n_from;
  CensusOptions opt{a.jobs, a.allow_long, a.quiet ? nullptr : &err};
  std::vector<CensusRow> rows;
  json rows_json = json::array();
  bool ok = true;
  for (int n = a.n_from; n <= to; ++n) {
    Census c;
    try {
      c = run_census(n, opt);
    } catch (const std::out_of_range& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << " (--allow-long)\n";
      return kUsage;
    }
    const CensusRow row = table_row(c);
    const MainTheoremReport thm = verify_main_theorem(c);
    const ConjectureReport conj = verify_conjecture(c);
    if (!a.quiet) {
      err << "  n=" << n << ": " << thm.pairs_checked << " unitaries checked, " << thm.undetermined
          << " undetermined, " << conj.condition_classes << " condition classes\n";
    }
    for (const auto& v : thm.violations) err << "violation (level outside {1,1+i}): " << v << "\n";
    for (const auto& v : thm.undirected_violations) err << "violation (undirected): " << v << "\n";
    for (const auto& v : thm.shape_violations) err << "violation (level shape): " << v << "\n";
    for (const auto& v : thm.other_violations) err << "violation: " << v << "\n";
    for (const auto& v : conj.counterexamples) err << "counterexample (condition but not DGS): " << v << "\n";
    ok = ok && thm.ok() && conj.ok();
    rows.push_back(row);
    json rj = row_json(row);
    json levels = json::object();
    for (const auto& [k, v] : thm.level_counts) levels[k] = v;
    rj["level_counts"] = std::move(levels);
    rows_json.push_back(std::move(rj));
    if (!a.out_dir.empty()) {
      try {
        export_json(n, c.buckets, a.out_dir + "/buckets_n" + std::to_string(n) + ".json");
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      }
    }
  }
  if (a.format == "csv") write_csv(out, rows);
  else out << (rows_json.size() == 1 ? rows_json[0] : rows_json).dump(2) << "\n";
  if (!a.out_dir.empty()) {
    try {
      export_csv(rows, a.out_dir + "/census.csv");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return ok ? kOk : kViolation;
}

inline int find_mates(int n, unsigned jobs, bool allow_long, std::ostream& out, std::ostream& err) {
  Census c;
  try {
    c = run_census(n, CensusOptions{jobs, allow_long, nullptr});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  out << buckets_json(n, mixspec::find_mates(c)).dump(2) << "\n";
  return kOk;
}

}  // namespace mixspec::cli
