#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "pcw/calculi.hpp"

namespace pcw {

/// Appends resolution-family lines with consecutive ids.
class ResolutionWriter {
public:
  long input(std::size_t index, const Clause& c);
  /// Orders the premises so the first holds the pivot positively.
  long resolve(long a, long b, Atom pivot);
  /// Declaration plus its three clause lines; returns the clause line ids.
  std::array<long, 3> extend(Atom q, Literal l1, Literal l2);

  const Clause& clause(long id) const { return proof_.lines[index_.at(id)].clause; }
  const ResLine& line(long id) const { return proof_.lines[index_.at(id)]; }
  long last() const { return proof_.lines.empty() ? 0 : proof_.lines.back().id; }
  const ResolutionProof& proof() const { return proof_; }
  ResolutionProof take() { return std::move(proof_); }

private:
  long push(ResLine l);

  ResolutionProof proof_;
  std::unordered_map<long, std::size_t> index_;
  long next_id_ = 1;
};

/// Derives a subclause of target from the pool lines by DPLL branching with
/// unit propagation; each branch point becomes one resolution step. Pool lines
/// listed in `fresh_input` are re-emitted as new INPUT lines at every use so
/// the result is tree-like. Throws std::logic_error when the pool with the
/// complement of target is satisfiable.
long derive_by_dpll(ResolutionWriter& w, const std::vector<long>& pool, const Clause& target,
                    const std::unordered_map<long, std::size_t>& fresh_input = {});

/// Tree-like refutation of an unsatisfiable CNF.
ResolutionProof dpll_refutation(const CnfFormula& cnf);

}  // namespace pcw
