#include "pcw/formula.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_set>

namespace pcw {

// ---------------------------------------------------------------------------
// Atom interning

namespace {

struct AtomTable {
  std::shared_mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;

  AtomTable() {
    names.emplace_back();
    ids.emplace(std::string(), 0);
  }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mu);
      auto it = ids.find(std::string(name));
      if (it != ids.end()) return it->second;
    }
    std::unique_lock lock(mu);
    auto [it, inserted] = ids.emplace(std::string(name), static_cast<std::uint32_t>(names.size()));
    if (inserted) names.emplace_back(name);
    return it->second;
  }

  const std::string& name(std::uint32_t id) {
    std::shared_lock lock(mu);
    return names[id];
  }
};

AtomTable& atom_table() {
  static AtomTable table;
  return table;
}

}  // namespace

Atom::Atom(std::string_view name) : id_(atom_table().intern(name)) {}

const std::string& Atom::name() const { return atom_table().name(id_); }

bool is_user_atom_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_pattern_name(std::string_view s) {
  if (s.empty() || s[0] < 'A' || s[0] > 'Z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_reserved_name(std::string_view s) { return s.size() >= 2 && s[0] == 'e' && s[1] == '_'; }

// ---------------------------------------------------------------------------
// Hash-consed nodes

struct Node {
  Kind kind;
  std::uint32_t atom;
  const Node* lhs;
  const Node* rhs;
  std::uint64_t size;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t node_hash(Kind k, std::uint32_t atom, const Node* l, const Node* r) {
  std::size_t h = static_cast<std::size_t>(k) * 0x100000001b3ULL;
  h = mix(h, atom);
  h = mix(h, l ? l->hash : 0x51);
  h = mix(h, r ? r->hash : 0x73);
  return h;
}

struct NodeKeyHash {
  using is_transparent = void;
  std::size_t operator()(const Node* n) const { return n->hash; }
};

struct NodeKeyEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->kind == b->kind && a->atom == b->atom && a->lhs == b->lhs && a->rhs == b->rhs;
  }
};

}  // namespace

struct NodeTable {
  static constexpr std::size_t kShards = 16;
  struct Shard {
    std::mutex mu;
    std::deque<Node> storage;
    std::unordered_set<const Node*, NodeKeyHash, NodeKeyEq> index;
  };
  std::array<Shard, kShards> shards;

  const Node* get(Kind k, std::uint32_t atom, const Node* l, const Node* r) {
    Node probe{k, atom, l, r, 0, node_hash(k, atom, l, r)};
    probe.size = 1 + (l ? l->size : 0) + (r ? r->size : 0);
    Shard& s = shards[probe.hash % kShards];
    std::lock_guard lock(s.mu);
    auto it = s.index.find(&probe);
    if (it != s.index.end()) return *it;
    s.storage.push_back(probe);
    const Node* n = &s.storage.back();
    s.index.insert(n);
    return n;
  }

  static NodeTable& instance() {
    static NodeTable table;
    return table;
  }

  static Formula wrap(const Node* n) { return Formula(n); }
};

Formula::Formula() : node_(NodeTable::instance().get(Kind::Zero, 0, nullptr, nullptr)) {}

Formula Formula::zero() { return Formula(); }
Formula Formula::one() { return Formula(NodeTable::instance().get(Kind::One, 0, nullptr, nullptr)); }
Formula Formula::constant(bool value) { return value ? one() : zero(); }
Formula Formula::var(Atom a) {
  return Formula(NodeTable::instance().get(Kind::Var, a.id(), nullptr, nullptr));
}
Formula Formula::negation(Formula f) {
  return Formula(NodeTable::instance().get(Kind::Not, 0, f.node_, nullptr));
}
Formula Formula::conj(Formula l, Formula r) {
  return Formula(NodeTable::instance().get(Kind::And, 0, l.node_, r.node_));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(NodeTable::instance().get(Kind::Or, 0, l.node_, r.node_));
}
Formula Formula::imp(Formula a, Formula b) { return disj(negation(a), b); }
Formula Formula::iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

Kind Formula::kind() const { return node_->kind; }
Atom Formula::atom() const {
  return Atom::from_id(node_->kind == Kind::Var ? node_->atom : 0);
}
Formula Formula::left() const { return Formula(node_->lhs); }
Formula Formula::right() const { return Formula(node_->rhs); }
std::uint64_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::is_literal() const {
  return kind() == Kind::Var || (kind() == Kind::Not && left().kind() == Kind::Var);
}

// ---------------------------------------------------------------------------
// Parsing and rendering

namespace {

class Parser {
public:
  Parser(std::string_view text, std::size_t pos, const ParseOptions& opts)
      : text_(text), pos_(pos), opts_(opts) {}

  Formula formula() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    if (text_[pos_] == '(') {
      std::size_t open = pos_++;
      skip_ws();
      std::size_t word_at = pos_;
      std::string_view op = word();
      if (op == "not") {
        Formula f = Formula::negation(formula());
        close(open);
        return f;
      }
      if (op == "and" || op == "or") {
        std::vector<Formula> args;
        while (true) {
          skip_ws();
          if (pos_ >= text_.size()) throw ParseError(pos_, "unbalanced parenthesis");
          if (text_[pos_] == ')') break;
          args.push_back(formula());
        }
        if (args.size() < 2) throw ParseError(pos_, "'" + std::string(op) + "' needs at least two operands");
        ++pos_;
        Formula acc = args.back();
        for (std::size_t i = args.size() - 1; i-- > 0;)
          acc = op == "and" ? Formula::conj(args[i], acc) : Formula::disj(args[i], acc);
        return acc;
      }
      if (op == "imp" || op == "iff") {
        Formula a = formula();
        Formula b = formula();
        close(open);
        return op == "imp" ? Formula::imp(a, b) : Formula::iff(a, b);
      }
      throw ParseError(word_at, "unknown connective '" + std::string(op) + "'");
    }
    std::size_t at = pos_;
    std::string_view w = word();
    if (w == "0") return Formula::zero();
    if (w == "1") return Formula::one();
    if (is_user_atom_name(w)) {
      if (is_reserved_name(w) && !opts_.allow_reserved)
        throw ReservedNameError("atom '" + std::string(w) + "' uses the reserved prefix e_");
      return Formula::var(Atom(w));
    }
    if (opts_.allow_patterns && is_pattern_name(w)) return Formula::var(Atom(w));
    throw ParseError(at, "malformed atom '" + std::string(w) + "'");
  }

  std::size_t pos() const { return pos_; }

private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  std::string_view word() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';' || c == '}') break;
      ++pos_;
    }
    if (start == pos_) {
      if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
      throw ParseError(pos_, "unexpected character");
    }
    return text_.substr(start, pos_ - start);
  }

  void close(std::size_t open) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unbalanced parenthesis opened at " + std::to_string(open));
    if (text_[pos_] != ')') throw ParseError(pos_, "expected ')'");
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_;
  const ParseOptions& opts_;
};

}  // namespace

Formula parse_formula_at(std::string_view text, std::size_t& pos, const ParseOptions& opts) {
  Parser p(text, pos, opts);
  Formula f = p.formula();
  pos = p.pos();
  return f;
}

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  std::size_t pos = 0;
  Formula f = parse_formula_at(text, pos, opts);
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
    ++pos;
  if (pos != text.size()) throw ParseError(pos, "trailing input");
  return f;
}

void render_formula(Formula f, std::string& out) {
  switch (f.kind()) {
    case Kind::Zero: out += '0'; return;
    case Kind::One: out += '1'; return;
    case Kind::Var: out += f.atom().name(); return;
    case Kind::Not:
      out += "(not ";
      render_formula(f.child(), out);
      out += ')';
      return;
    case Kind::And:
    case Kind::Or:
      out += f.kind() == Kind::And ? "(and " : "(or ";
      render_formula(f.left(), out);
      out += ' ';
      render_formula(f.right(), out);
      out += ')';
      return;
  }
}

std::string render_formula(Formula f) {
  std::string out;
  render_formula(f, out);
  return out;
}

std::string render_substitution(const Substitution& s) {
  std::vector<std::pair<std::string, Formula>> items;
  for (const auto& [a, f] : s) items.emplace_back(a.name(), f);
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "; ";
    out += items[i].first;
    out += '=';
    render_formula(items[i].second, out);
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

Assignment make_assignment(std::initializer_list<std::pair<std::string_view, bool>> values) {
  Assignment a;
  for (const auto& [name, v] : values) a[Atom(name).id()] = v;
  return a;
}

namespace {

bool eval_rec(Formula f, const Assignment& a, std::unordered_map<const Node*, bool>& memo) {
  switch (f.kind()) {
    case Kind::Zero: return false;
    case Kind::One: return true;
    case Kind::Var: {
      auto it = a.find(f.atom().id());
      if (it == a.end()) throw MissingAtomError("assignment has no value for atom '" + f.atom().name() + "'");
      return it->second;
    }
    default: break;
  }
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  bool v = false;
  switch (f.kind()) {
    case Kind::Not: v = !eval_rec(f.child(), a, memo); break;
    case Kind::And: v = eval_rec(f.left(), a, memo) && eval_rec(f.right(), a, memo); break;
    case Kind::Or: v = eval_rec(f.left(), a, memo) || eval_rec(f.right(), a, memo); break;
    default: break;
  }
  memo.emplace(f.node(), v);
  return v;
}

}  // namespace

bool evaluate(Formula f, const Assignment& a) {
  std::unordered_map<const Node*, bool> memo;
  // Every atom must be assigned, even under short-circuiting.
  for (Atom at : atoms_of(f))
    if (!a.count(at.id())) throw MissingAtomError("assignment has no value for atom '" + at.name() + "'");
  return eval_rec(f, a, memo);
}

std::vector<Atom> atoms_of(Formula f) {
  std::vector<Atom> out;
  std::unordered_set<const Node*> seen;
  std::unordered_set<std::uint32_t> have;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.node()).second) continue;
    switch (g.kind()) {
      case Kind::Var:
        if (have.insert(g.atom().id()).second) out.push_back(g.atom());
        break;
      case Kind::Not: stack.push_back(g.child()); break;
      case Kind::And:
      case Kind::Or:
        stack.push_back(g.right());
        stack.push_back(g.left());
        break;
      default: break;
    }
  }
  return out;
}

bool occurs_in(Atom a, Formula f) {
  std::unordered_set<const Node*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.node()).second) continue;
    switch (g.kind()) {
      case Kind::Var:
        if (g.atom() == a) return true;
        break;
      case Kind::Not: stack.push_back(g.child()); break;
      case Kind::And:
      case Kind::Or:
        stack.push_back(g.left());
        stack.push_back(g.right());
        break;
      default: break;
    }
  }
  return false;
}

namespace {

Formula subst_rec(Formula f, const Substitution& s, std::unordered_map<const Node*, Formula>& memo) {
  switch (f.kind()) {
    case Kind::Zero:
    case Kind::One: return f;
    case Kind::Var: {
      auto it = s.find(f.atom());
      return it == s.end() ? f : it->second;
    }
    default: break;
  }
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  Formula r;
  switch (f.kind()) {
    case Kind::Not: r = Formula::negation(subst_rec(f.child(), s, memo)); break;
    case Kind::And: r = Formula::conj(subst_rec(f.left(), s, memo), subst_rec(f.right(), s, memo)); break;
    case Kind::Or: r = Formula::disj(subst_rec(f.left(), s, memo), subst_rec(f.right(), s, memo)); break;
    default: break;
  }
  memo.emplace(f.node(), r);
  return r;
}

bool match_rec(Formula pat, Formula f, Substitution& s) {
  switch (pat.kind()) {
    case Kind::Var: {
      auto [it, inserted] = s.emplace(pat.atom(), f);
      return inserted || it->second == f;
    }
    case Kind::Zero:
    case Kind::One: return pat == f;
    case Kind::Not: return f.kind() == Kind::Not && match_rec(pat.child(), f.child(), s);
    case Kind::And:
    case Kind::Or:
      return f.kind() == pat.kind() && match_rec(pat.left(), f.left(), s) && match_rec(pat.right(), f.right(), s);
  }
  return false;
}

}  // namespace

Formula apply_substitution(Formula f, const Substitution& s) {
  if (s.empty()) return f;
  std::unordered_map<const Node*, Formula> memo;
  return subst_rec(f, s, memo);
}

std::optional<Substitution> match_scheme(Formula pattern, Formula f) {
  Substitution s;
  if (!match_rec(pattern, f, s)) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Exhaustive classification, 64 assignments per pass.

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Tautology: return "TAUTOLOGY";
    case Classification::SatisfiableNotTautology: return "SATISFIABLE_NOT_TAUTOLOGY";
    case Classification::Unsatisfiable: return "UNSATISFIABLE";
  }
  return "?";
}

namespace {

struct Instr {
  Kind kind;
  std::uint32_t a;
  std::uint32_t b;
};

constexpr std::array<std::uint64_t, 6> kLowPatterns = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

}  // namespace

Classification brute_force_classify(Formula f, std::size_t atom_limit) {
  std::vector<Atom> atoms = atoms_of(f);
  if (atoms.size() > atom_limit)
    throw TooManyAtomsError("formula has " + std::to_string(atoms.size()) + " atoms; limit is " +
                            std::to_string(atom_limit));
  std::unordered_map<std::uint32_t, std::uint32_t> atom_index;
  for (std::size_t i = 0; i < atoms.size(); ++i) atom_index[atoms[i].id()] = static_cast<std::uint32_t>(i);

  // Postorder program over distinct nodes.
  std::vector<Instr> prog;
  std::unordered_map<const Node*, std::uint32_t> slot;
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (slot.count(g.node())) continue;
    bool binary = g.kind() == Kind::And || g.kind() == Kind::Or;
    if (!expanded && (binary || g.kind() == Kind::Not)) {
      stack.emplace_back(g, true);
      if (binary) stack.emplace_back(g.right(), false);
      stack.emplace_back(g.left(), false);
      continue;
    }
    Instr in{g.kind(), 0, 0};
    if (g.kind() == Kind::Var) in.a = atom_index.at(g.atom().id());
    if (g.kind() == Kind::Not || binary) in.a = slot.at(g.left().node());
    if (binary) in.b = slot.at(g.right().node());
    slot.emplace(g.node(), static_cast<std::uint32_t>(prog.size()));
    prog.push_back(in);
  }

  const std::size_t k = atoms.size();
  const std::uint64_t valid = k >= 6 ? ~0ULL : ((1ULL << (1u << k)) - 1);
  const std::uint64_t blocks = k > 6 ? (1ULL << (k - 6)) : 1;
  std::vector<std::uint64_t> vals(prog.size());
  bool any_true = false;
  bool any_false = false;
  for (std::uint64_t blk = 0; blk < blocks; ++blk) {
    for (std::size_t i = 0; i < prog.size(); ++i) {
      const Instr& in = prog[i];
      switch (in.kind) {
        case Kind::Zero: vals[i] = 0; break;
        case Kind::One: vals[i] = ~0ULL; break;
        case Kind::Var:
          vals[i] = in.a < 6 ? kLowPatterns[in.a] : (((blk >> (in.a - 6)) & 1) ? ~0ULL : 0);
          break;
        case Kind::Not: vals[i] = ~vals[in.a]; break;
        case Kind::And: vals[i] = vals[in.a] & vals[in.b]; break;
        case Kind::Or: vals[i] = vals[in.a] | vals[in.b]; break;
      }
    }
    std::uint64_t r = vals.back() & valid;
    if (r) any_true = true;
    if (r != valid) any_false = true;
    if (any_true && any_false) return Classification::SatisfiableNotTautology;
  }
  return any_true ? Classification::Tautology : Classification::Unsatisfiable;
}

Formula disj_list(const std::vector<Formula>& items, std::size_t from) {
  if (from >= items.size()) return Formula::zero();
  Formula acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > from;) acc = Formula::disj(items[i], acc);
  return acc;
}

Formula conj_list(const std::vector<Formula>& items, std::size_t from) {
  if (from >= items.size()) return Formula::one();
  Formula acc = items.back();
  for (std::size_t i = items.size() - 1; i-- > from;) acc = Formula::conj(items[i], acc);
  return acc;
}

namespace {
Formula balanced_rec(const std::vector<Formula>& items, std::size_t lo, std::size_t hi, bool conj) {
  if (hi - lo == 1) return items[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  Formula l = balanced_rec(items, lo, mid, conj);
  Formula r = balanced_rec(items, mid, hi, conj);
  return conj ? Formula::conj(l, r) : Formula::disj(l, r);
}
}  // namespace

Formula disj_balanced(const std::vector<Formula>& items) {
  if (items.empty()) return Formula::zero();
  return balanced_rec(items, 0, items.size(), false);
}

Formula conj_balanced(const std::vector<Formula>& items) {
  if (items.empty()) return Formula::one();
  return balanced_rec(items, 0, items.size(), true);
}

}  // namespace pcw
