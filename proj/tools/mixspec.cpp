#include "commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  using namespace mixspec;
  CLI::App app{"Generalized Hermitian spectra of mixed graphs"};
  app.require_subcommand(1);

  std::string graph_path, other_path, matrix_path;
  auto* analyze = app.add_subcommand("analyze", "walk-matrix and spectrum report for a graph file");
  analyze->add_option("graph", graph_path)->required();

  auto* compare = app.add_subcommand("compare", "R-cospectrality, isomorphism and transfer unitary of two graphs");
  compare->add_option("graph_g", graph_path)->required();
  compare->add_option("graph_h", other_path)->required();

  auto* snf = app.add_subcommand("snf", "Smith normal form of a Gaussian-integer matrix file");
  snf->add_option("matrix", matrix_path)->required();

  cli::CensusArgs cargs;
  cargs.jobs = cli::default_jobs();
  auto* census = app.add_subcommand("census", "census of self-converse mixed graphs of order n (or n..to)");
  census->add_option("n", cargs.n_from)->required();
  census->add_option("to", cargs.n_to, "last order of a range");
  census->add_option("-j,--jobs", cargs.jobs, "worker threads (default $MIXSPEC_JOBS or hardware)")
      ->check(CLI::PositiveNumber);
  census->add_flag("--allow-long", cargs.allow_long, "permit the long-running n=6 scan");
  census->add_option("--out", cargs.out_dir, "directory for census.csv and buckets_n<n>.json");
  census->add_option("--format", cargs.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  census->add_flag("-q,--quiet", cargs.quiet, "no progress on stderr");

  int mates_n = 0;
  auto* mates = app.add_subcommand("find-mates", "non-singleton generalized-spectrum buckets at order n");
  mates->add_option("n", mates_n)->required();
  mates->add_option("-j,--jobs", cargs.jobs)->check(CLI::PositiveNumber);
  mates->add_flag("--allow-long", cargs.allow_long);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  try {
    if (*analyze) return cli::analyze(graph_path, std::cout, std::cerr);
    if (*compare) return cli::compare(graph_path, other_path, std::cout, std::cerr);
    if (*snf) return cli::snf(matrix_path, std::cout, std::cerr);
    if (*census) return cli::census(cargs, std::cout, std::cerr);
    if (*mates) return cli::find_mates(mates_n, cargs.jobs, cargs.allow_long, std::cout, std::cerr);
  } catch (const std::logic_error& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return cli::kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::kUsage;
}
