#pragma once

#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pcw/calculi.hpp"

namespace pcw {

class UnknownMacroError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ArityError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Antecedent and consequent of `(or (not a) b)`.
Formula antecedent(Formula imp);
Formula consequent(Formula imp);

/// Lemma lines keyed by antecedent: each proves `x -> c`.
using LemmaMap = std::unordered_map<Formula, long, FormulaHash>;

/// Appends Hilbert lines one at a time. Every method returns the id of a line
/// proving the named formula; a formula already proven is not proven again.
class ProofBuilder {
public:
  explicit ProofBuilder(FregeVariant variant = FregeVariant::F);

  long ax(int scheme, const Substitution& s);
  /// Binds P, Q, R in order; bindings for atoms absent from the scheme are dropped.
  long ax(int scheme, std::initializer_list<Formula> args);
  long mp(long imp_line, long antecedent_line);
  long ext(Atom q, Formula d);
  long sub(long line, const Substitution& s);
  /// Appends a fresh line repeating line's formula (via identity and MP) so it becomes the last line.
  long restate(long line);

  Formula formula(long id) const;
  long last() const { return proof_.lines.empty() ? 0 : proof_.lines.back().id; }
  std::size_t size() const { return proof_.lines.size(); }
  const HilbertProof& proof() const { return proof_; }
  HilbertProof take() { return std::move(proof_); }

  long identity(Formula a);                        // a -> a
  long weaken(long b_line, Formula a);             // a -> b
  long trans(long ab, long bc);                    // a -> c
  long lift(long wz, Formula y);                   // (y -> w) -> (y -> z)
  long exchange(long abc);                         // b -> (a -> c)
  long curry(long and_ab_c);                       // a -> (b -> c)
  long contrapose(long ab);                        // ~b -> ~a
  long lem(Formula a);                             // a | ~a
  long and_intro(long a, long b);                  // a & b
  long and_elim(long ab, bool left);
  long case_split(long ac, long bc);               // (a | b) -> c

  /// From a line proving disj_list(items) and lemma(i) proving items[i] -> goal, proves goal.
  long fold_cases(long line, const std::vector<Formula>& items, Formula goal,
                  const std::function<long(std::size_t)>& lemma);

  /// Proves disj_list(to) from a line proving disj_list(from). Each element of
  /// `from` must occur in `to` or have a lemma whose consequent is an element,
  /// a tail, or a disjunction of elements of `to`.
  long restructure(long line, const std::vector<Formula>& from, const std::vector<Formula>& to,
                   const LemmaMap& lemmas = {});

  /// Resolves `pivot | rest` against `~pivot | rest` after restructuring both premises; rest must be nonempty.
  long resolve(long pos_line, const std::vector<Formula>& pos_items, long neg_line,
               const std::vector<Formula>& neg_items, Formula pivot, const std::vector<Formula>& rest);

  /// disj_list([negated_clause_formula(c), l1, ..., lm]); for the empty clause just `1`.
  long clause_lemma(const Clause& c);

private:
  long add(HilLine line, bool force = false);

  HilbertProof proof_;
  std::unordered_map<long, std::size_t> index_;
  std::unordered_map<Formula, long, FormulaHash> proven_;
  long next_id_ = 1;
};

/// Macro names: identity{A}, lem{A}, weaken{A}[1], trans[2], lift{A}[1], exchange[1],
/// curry[1], contrapose[1], and_intro[2], and_elim_left[1], and_elim_right[1],
/// case_split[2], mp[2]. Returns the lines appended.
std::vector<HilLine> expand_macro(ProofBuilder& pb, std::string_view name, const std::vector<long>& inputs,
                                  const Substitution& bindings);

/// A disjunction `disj_balanced(leaves)` handled through a head formula H.
/// Directly, H is the disjunction itself. Abbreviated, every inner node of the
/// balanced tree gets an extension atom and H is the root atom.
class DisjunctionContext {
public:
  DisjunctionContext(ProofBuilder& pb, std::vector<Formula> leaves, bool abbreviate, const std::string& prefix);

  Formula head() const { return nodes_[0].formula; }
  Formula target() const { return target_; }
  long leaf_to_head(std::size_t leaf);  // leaves[leaf] -> H
  long unfold(long head_line);          // H to disj_balanced(leaves)
  const std::vector<Atom>& atoms() const { return atoms_; }

private:
  struct TreeNode {
    std::size_t lo, hi;
    int left = -1, right = -1, parent = -1;
    Formula formula = Formula::zero();   // H-side formula
    Formula expanded = Formula::zero();  // disj_balanced of the range
    long def_line = 0;
    long up = 0;                         // formula -> head, 0 when unknown
  };
  int build(std::size_t lo, std::size_t hi, int parent);
  long to_parent(int v);
  long to_head(int v);

  ProofBuilder& pb_;
  bool abbreviate_;
  std::string prefix_;
  std::vector<Formula> leaves_;
  std::vector<TreeNode> nodes_;
  std::vector<int> leaf_node_;
  std::vector<Atom> atoms_;
  Formula target_ = Formula::zero();
};

}  // namespace pcw
