#pragma once

#include <random>
#include <string>
#include <vector>

#include "pcw/cnf.hpp"
#include "pcw/formula.hpp"

namespace pcw::testing {

inline Formula random_formula(std::mt19937& rng, int depth, const std::vector<std::string>& atoms) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 7);
  int k = pick(rng);
  if (depth <= 0 || k <= 2) {
    if (k == 0 && depth % 3 == 0) return Formula::constant(rng() & 1);
    return Formula::var(atoms[rng() % atoms.size()]);
  }
  if (k == 3) return Formula::negation(random_formula(rng, depth - 1, atoms));
  Formula l = random_formula(rng, depth - 1, atoms);
  Formula r = random_formula(rng, depth - 1, atoms);
  return (k % 2) ? Formula::conj(l, r) : Formula::disj(l, r);
}

inline CnfFormula random_cnf(std::mt19937& rng, int max_atoms, int max_clauses, int max_width) {
  int n = 1 + static_cast<int>(rng() % max_atoms);
  int m = static_cast<int>(rng() % (max_clauses + 1));
  std::vector<Clause> clauses;
  for (int i = 0; i < m; ++i) {
    int w = 1 + static_cast<int>(rng() % max_width);
    std::vector<Literal> lits;
    for (int j = 0; j < w; ++j)
      lits.push_back(Literal{Atom("v" + std::to_string(1 + rng() % n)), static_cast<bool>(rng() & 1)});
    clauses.emplace_back(std::move(lits));
  }
  CnfFormula cnf = CnfFormula::from_clauses(std::move(clauses));
  return cnf;
}

/// Independent recursive evaluator: plain tree walk with no memoization.
inline bool naive_eval(Formula f, const std::vector<Atom>& atoms, std::uint64_t bits) {
  switch (f.kind()) {
    case Kind::Zero: return false;
    case Kind::One: return true;
    case Kind::Var:
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i] == f.atom()) return (bits >> i) & 1;
      return false;
    case Kind::Not: return !naive_eval(f.child(), atoms, bits);
    case Kind::And: return naive_eval(f.left(), atoms, bits) && naive_eval(f.right(), atoms, bits);
    case Kind::Or: return naive_eval(f.left(), atoms, bits) || naive_eval(f.right(), atoms, bits);
  }
  return false;
}

inline Classification naive_classify(Formula f) {
  auto atoms = atoms_of(f);
  bool t = false, u = false;
  for (std::uint64_t b = 0; b < (1ULL << atoms.size()); ++b) (naive_eval(f, atoms, b) ? t : u) = true;
  if (t && !u) return Classification::Tautology;
  if (!t) return Classification::Unsatisfiable;
  return Classification::SatisfiableNotTautology;
}

}  // namespace pcw::testing

#include "pcw/generators.hpp"

namespace pcw::testing {

inline Circuit random_circuit(std::mt19937& rng, int max_inputs, int max_gates) {
  Circuit c;
  c.inputs = 1 + static_cast<int>(rng() % max_inputs);
  std::vector<std::string> ids;
  for (int k = 1; k <= c.inputs; ++k) ids.push_back("x" + std::to_string(k));
  int gates = static_cast<int>(rng() % (max_gates + 1));
  const GateOp ops[] = {GateOp::And, GateOp::Or, GateOp::Not, GateOp::Xor, GateOp::Const0, GateOp::Const1};
  for (int g = 0; g < gates; ++g) {
    GateOp op = ops[rng() % 6];
    Gate gate{"g" + std::to_string(g + 1), op, {}};
    int ar = (op == GateOp::Not) ? 1 : (op == GateOp::Const0 || op == GateOp::Const1) ? 0 : 2;
    for (int a = 0; a < ar; ++a) gate.args.push_back(ids[rng() % ids.size()]);
    c.gates.push_back(gate);
    ids.push_back(gate.id);
  }
  for (int o = 0; o < 2 * c.inputs; ++o) c.outputs.push_back(ids[rng() % ids.size()]);
  return c;
}

/// Pushes negations to the atoms and removes double negations.
inline Formula demorgan_nnf(Formula f, bool negate = false) {
  switch (f.kind()) {
    case Kind::Zero:
    case Kind::One: return Formula::constant((f.kind() == Kind::One) != negate);
    case Kind::Var: return negate ? Formula::negation(f) : f;
    case Kind::Not: return demorgan_nnf(f.child(), !negate);
    case Kind::And:
    case Kind::Or: {
      Formula l = demorgan_nnf(f.left(), negate);
      Formula r = demorgan_nnf(f.right(), negate);
      bool as_and = (f.kind() == Kind::And) != negate;
      return as_and ? Formula::conj(l, r) : Formula::disj(l, r);
    }
  }
  return f;
}

/// Plain enumeration over the declared atoms.
inline bool satisfiable_by_enumeration(const CnfFormula& cnf) {
  std::size_t n = cnf.atoms.size();
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    bool all = true;
    for (const Clause& c : cnf.clauses) {
      bool sat = false;
      for (Literal l : c) {
        std::size_t i = 0;
        while (cnf.atoms[i] != l.atom) ++i;
        if (bool((bits >> i) & 1) == l.positive) sat = true;
      }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace pcw::testing
