#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcw/formula.hpp"

namespace pcw {

struct Literal {
  Atom atom;
  bool positive = true;

  Literal operator~() const { return {atom, !positive}; }
  friend bool operator==(Literal a, Literal b) { return a.atom == b.atom && a.positive == b.positive; }
  friend bool operator!=(Literal a, Literal b) { return !(a == b); }
  friend bool operator<(Literal a, Literal b) {
    return a.atom == b.atom ? a.positive < b.positive : a.atom < b.atom;
  }
};

inline Literal pos(std::string_view name) { return {Atom(name), true}; }
inline Literal neg(std::string_view name) { return {Atom(name), false}; }

/// Literal as a formula: `p` or `(not p)`.
Formula literal_formula(Literal l);
std::optional<Literal> formula_literal(Formula f);

/// Disjunction of literals with duplicates removed (first occurrence kept).
class Clause {
public:
  Clause() = default;
  Clause(std::initializer_list<Literal> lits);
  explicit Clause(std::vector<Literal> lits);

  const std::vector<Literal>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Literal l) const;
  bool is_tautological() const;
  /// Order-insensitive comparison.
  bool same_set(const Clause& other) const;
  std::vector<Literal> sorted() const;

  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }

private:
  std::vector<Literal> lits_;
};

struct CnfFormula {
  std::vector<Atom> atoms;
  std::vector<Clause> clauses;

  /// Declares atoms in first-occurrence order.
  static CnfFormula from_clauses(std::vector<Clause> clauses);
  void validate() const;
  bool declares(Atom a) const;
};

/// Right-nested disjunction of the clause's literals; empty clause gives 0.
Formula clause_formula(const Clause& c);
/// Conjunction of complemented literals (right-nested); empty clause gives 1.
Formula negated_clause_formula(const Clause& c);
/// Balanced conjunction of clause formulas; empty CNF gives 1.
Formula cnf_formula(const CnfFormula& cnf);
/// Balanced disjunction of negated clauses: the tautology a refutation of `cnf` proves.
Formula dnf_negation(const CnfFormula& cnf);
/// Inverse of dnf_negation. Atom declarations follow first occurrence.
std::optional<CnfFormula> cnf_from_dnf(Formula f);

bool clause_satisfied(const Clause& c, const Assignment& a);
bool brute_force_satisfiable(const CnfFormula& cnf, std::size_t atom_limit = kDefaultBruteForceAtoms);

std::string write_dimacs(const CnfFormula& cnf);
/// Reads DIMACS; a `c atoms:` comment names the variables, otherwise `x<i>` names are used.
CnfFormula parse_dimacs(std::string_view text, const ParseOptions& opts = {});

std::string render_clause(const Clause& c);

}  // namespace pcw
