#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcw/calculi.hpp"

namespace pcw {

class UnsupportedPairError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class SourceInvalidError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class EmptyCorpusError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A proof in any calculus: refutations carry their CNF in `refutation`.
struct AnyProof {
  Calculus system = Calculus::F;
  HilbertProof hilbert;
  ResolutionDocument refutation;

  static AnyProof of(HilbertProof p);
  static AnyProof of(ResolutionDocument d, Calculus system);
  bool refutational() const;
  CheckReport check() const;
  std::string text() const;
};

struct TranslationResult {
  AnyProof target;
  std::uint64_t source_symbols = 0;
  std::uint64_t target_symbols = 0;
  Formula conclusion = Formula::one();

  /// `source_symbols=<n> target_symbols=<n>`
  std::string stats_line() const;
};

/// Supported: F->EF, ER->EF (RES sources count as ER), EF->ER, EF->SF.
/// EF->ER needs a conclusion that is the negation of a CNF in the form
/// dnf_negation produces; the refuted CNF is that CNF.
TranslationResult translate(Calculus from, Calculus to, const AnyProof& source);
bool supported_pair(Calculus from, Calculus to);

struct SimulationReport {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;  // (source, target) symbols
  double slope = 0.0;  // least squares of log target on log source
};

SimulationReport simulation_report(Calculus from, Calculus to, const std::vector<AnyProof>& corpus);

/// Least-squares slope of log y against log x; 0 when all x coincide.
double log_log_slope(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& points);

}  // namespace pcw
