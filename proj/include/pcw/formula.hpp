#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcw {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

class ReservedNameError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MissingAtomError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class TooManyAtomsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Interned propositional variable. Two atoms are equal iff their names are.
class Atom {
public:
  Atom() = default;
  explicit Atom(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const { return id_; }
  static Atom from_id(std::uint32_t id) {
    Atom a;
    a.id_ = id;
    return a;
  }

  friend bool operator==(Atom a, Atom b) { return a.id_ == b.id_; }
  friend bool operator!=(Atom a, Atom b) { return a.id_ != b.id_; }
  friend bool operator<(Atom a, Atom b) { return a.id_ < b.id_; }

private:
  std::uint32_t id_ = 0;
};

bool is_user_atom_name(std::string_view s);
bool is_pattern_name(std::string_view s);
bool is_reserved_name(std::string_view s);

enum class Kind : std::uint8_t { Zero, One, Var, Not, And, Or };

struct Node;

/// Immutable propositional formula over 0, 1, not, and, or.
///
/// Formulas are hash-consed: structurally equal formulas share one node, so
/// equality and hashing are O(1). Nodes live for the lifetime of the process.
class Formula {
public:
  Formula();

  static Formula zero();
  static Formula one();
  static Formula constant(bool value);
  static Formula var(Atom a);
  static Formula var(std::string_view name) { return var(Atom(name)); }
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  /// (or (not a) b)
  static Formula imp(Formula a, Formula b);
  /// (and (imp a b) (imp b a))
  static Formula iff(Formula a, Formula b);

  Kind kind() const;
  Atom atom() const;
  Formula child() const { return left(); }
  Formula left() const;
  Formula right() const;

  bool is_var() const { return kind() == Kind::Var; }
  bool is_constant() const { return kind() == Kind::Zero || kind() == Kind::One; }
  bool is_literal() const;

  /// Number of nodes of the formula tree (shared subtrees counted per occurrence).
  std::uint64_t size() const;
  std::size_t hash() const;
  const Node* node() const { return node_; }

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
  friend bool operator!=(Formula a, Formula b) { return a.node_ != b.node_; }

private:
  explicit Formula(const Node* n) : node_(n) {}
  const Node* node_;
  friend struct NodeTable;
};

struct FormulaHash {
  std::size_t operator()(Formula f) const { return f.hash(); }
};

using Substitution = std::map<Atom, Formula>;
using Assignment = std::unordered_map<std::uint32_t, bool>;

struct ParseOptions {
  /// Accept `e_`-prefixed atoms (extension contexts only).
  bool allow_reserved = false;
  /// Accept uppercase pattern variables (scheme tables).
  bool allow_patterns = false;
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
/// Parses one formula starting at `pos`, advancing it past the formula.
Formula parse_formula_at(std::string_view text, std::size_t& pos, const ParseOptions& opts = {});
std::string render_formula(Formula f);
void render_formula(Formula f, std::string& out);

Assignment make_assignment(std::initializer_list<std::pair<std::string_view, bool>> values);
bool evaluate(Formula f, const Assignment& a);

/// Distinct atoms in left-to-right first-occurrence order.
std::vector<Atom> atoms_of(Formula f);
bool occurs_in(Atom a, Formula f);

Formula apply_substitution(Formula f, const Substitution& s);
std::optional<Substitution> match_scheme(Formula pattern, Formula f);

std::string render_substitution(const Substitution& s);

enum class Classification { Tautology, SatisfiableNotTautology, Unsatisfiable };
std::string to_string(Classification c);

inline constexpr std::size_t kDefaultBruteForceAtoms = 24;

/// Exhaustive enumeration of every assignment to the atoms of `f`.
Classification brute_force_classify(Formula f, std::size_t atom_limit = kDefaultBruteForceAtoms);

/// Right-nested disjunction d1 ∨ (d2 ∨ (...)); empty list gives 0.
Formula disj_list(const std::vector<Formula>& items, std::size_t from = 0);
/// Right-nested conjunction; empty list gives 1.
Formula conj_list(const std::vector<Formula>& items, std::size_t from = 0);
/// Balanced disjunction tree: split at size/2, left half first; empty list gives 0.
Formula disj_balanced(const std::vector<Formula>& items);
/// Balanced conjunction tree with the same split; empty list gives 1.
Formula conj_balanced(const std::vector<Formula>& items);

}  // namespace pcw
