#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pcw/simulations.hpp"

namespace pcw {

struct SizeReport {
  std::string label;
  Calculus system = Calculus::F;
  std::uint64_t steps = 0;
  std::uint64_t symbols = 0;
};

/// Reads a proof of any calculus from its `system` header. `as_tree` reads a
/// RES document as tree-like resolution.
AnyProof parse_any_proof(std::string_view text, const std::string& base_dir = ".", bool as_tree = false);

/// Steps are lines; symbols are formula node counts, or literals + 1 per clause line.
SizeReport measure_proof(std::string_view text, const std::string& base_dir = ".", const std::string& label = "");
SizeReport measure_proof(const AnyProof& proof, const std::string& label = "");

struct SearchBudget {
  std::size_t max_lines = 40;  // resolution steps
  double max_seconds = 60.0;
};

struct MinResResult {
  bool exceeded = false;
  std::size_t steps = 0;        // exact minimum when !exceeded
  std::size_t lower_bound = 0;  // no refutation with fewer steps exists
  std::size_t upper_bound = 0;  // steps of some refutation, 0 if none known
  /// The minimum, or `BUDGET_EXCEEDED lower=<l> upper=<u>`.
  std::string to_string() const;
};

/// Fewest RESOLVE steps of any dag-like refutation (input lines are free).
/// Throws std::invalid_argument for a satisfiable CNF or more than 64 atoms.
MinResResult min_resolution_steps(const CnfFormula& cnf, const SearchBudget& budget = {});

struct CorpusRow {
  std::string label;
  std::string system;
  std::uint64_t steps = 0;
  std::uint64_t symbols = 0;
  std::string verdict;
  std::int64_t millis = 0;
};

/// JSON config: {"jobs": [ {"label", "kind", ...} ]}. Kinds:
///   prove-php  n | n_from,n_to, functionality
///   check      system, path
///   translate  from, to, path
///   refute-php n | n_from,n_to  (tree-like DPLL refutation)
/// Paths are relative to the config file. Job errors become verdicts.
std::vector<CorpusRow> run_corpus(const std::string& config_path, unsigned jobs = 1);
std::string corpus_csv(const std::vector<CorpusRow>& rows);

/// Single-line changes each of which makes the proof invalid.
std::vector<AnyProof> single_line_mutations(const AnyProof& proof, std::mt19937& rng, std::size_t count);

}  // namespace pcw
