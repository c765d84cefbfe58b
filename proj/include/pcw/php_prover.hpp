#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcw/calculi.hpp"

namespace pcw {

struct PhpProofArtifacts {
  int n = 0;
  bool functionality = false;
  HilbertProof proof;
  std::vector<Atom> ext_atoms;
  std::uint64_t steps = 0;
  std::uint64_t symbols = 0;
};

/// Extended Frege proof of php_formula(n, n - 1, functionality).
///
/// Level k atoms are p_i_j at k = n and e_q<k>_<i>_<j> below, with
/// e_q<k-1>_i_j == a_i_j | (a_i_(k-1) & a_k_j). From n = 4 on the conclusion
/// is abbreviated by a tree of e_h<k> atoms.
PhpProofArtifacts build_ef_proof_php(int n, bool functionality = false);

/// `n=<n> steps=<s> symbols=<k> ext_atoms=<e>`
std::string php_stats_line(const PhpProofArtifacts& a);

}  // namespace pcw
