#include "pcw/cnf.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pcw {

Formula literal_formula(Literal l) {
  Formula v = Formula::var(l.atom);
  return l.positive ? v : Formula::negation(v);
}

std::optional<Literal> formula_literal(Formula f) {
  if (f.kind() == Kind::Var) return Literal{f.atom(), true};
  if (f.kind() == Kind::Not && f.child().kind() == Kind::Var) return Literal{f.child().atom(), false};
  return std::nullopt;
}

Clause::Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}

Clause::Clause(std::vector<Literal> lits) {
  lits_.reserve(lits.size());
  for (Literal l : lits)
    if (std::find(lits_.begin(), lits_.end(), l) == lits_.end()) lits_.push_back(l);
}

bool Clause::contains(Literal l) const { return std::find(lits_.begin(), lits_.end(), l) != lits_.end(); }

bool Clause::is_tautological() const {
  return std::any_of(lits_.begin(), lits_.end(), [&](Literal l) { return contains(~l); });
}

std::vector<Literal> Clause::sorted() const {
  std::vector<Literal> s = lits_;
  std::sort(s.begin(), s.end());
  return s;
}

bool Clause::same_set(const Clause& other) const {
  return lits_.size() == other.lits_.size() && sorted() == other.sorted();
}

CnfFormula CnfFormula::from_clauses(std::vector<Clause> clauses) {
  CnfFormula cnf;
  std::unordered_set<std::uint32_t> seen;
  for (const Clause& c : clauses)
    for (Literal l : c)
      if (seen.insert(l.atom.id()).second) cnf.atoms.push_back(l.atom);
  cnf.clauses = std::move(clauses);
  return cnf;
}

bool CnfFormula::declares(Atom a) const { return std::find(atoms.begin(), atoms.end(), a) != atoms.end(); }

void CnfFormula::validate() const {
  std::unordered_set<std::uint32_t> declared;
  for (Atom a : atoms) declared.insert(a.id());
  for (const Clause& c : clauses)
    for (Literal l : c)
      if (!declared.count(l.atom.id()))
        throw std::invalid_argument("clause literal uses undeclared atom '" + l.atom.name() + "'");
}

Formula clause_formula(const Clause& c) {
  std::vector<Formula> lits;
  for (Literal l : c) lits.push_back(literal_formula(l));
  return disj_list(lits);
}

Formula negated_clause_formula(const Clause& c) {
  std::vector<Formula> lits;
  for (Literal l : c) lits.push_back(literal_formula(~l));
  return conj_list(lits);
}

Formula cnf_formula(const CnfFormula& cnf) {
  std::vector<Formula> parts;
  for (const Clause& c : cnf.clauses) parts.push_back(clause_formula(c));
  return conj_balanced(parts);
}

Formula dnf_negation(const CnfFormula& cnf) {
  std::vector<Formula> parts;
  for (const Clause& c : cnf.clauses) parts.push_back(negated_clause_formula(c));
  return disj_balanced(parts);
}

namespace {

void flatten_or(Formula f, std::vector<Formula>& out) {
  if (f.kind() == Kind::Or) {
    flatten_or(f.left(), out);
    flatten_or(f.right(), out);
  } else {
    out.push_back(f);
  }
}

std::optional<Clause> clause_of_disjunct(Formula d) {
  if (d.kind() == Kind::One) return Clause{};
  std::vector<Literal> lits;
  while (d.kind() == Kind::And) {
    auto l = formula_literal(d.left());
    if (!l) return std::nullopt;
    lits.push_back(~*l);
    d = d.right();
  }
  auto l = formula_literal(d);
  if (!l) return std::nullopt;
  lits.push_back(~*l);
  return Clause(std::move(lits));
}

}  // namespace

std::optional<CnfFormula> cnf_from_dnf(Formula f) {
  std::vector<Clause> clauses;
  if (f.kind() != Kind::Zero) {
    std::vector<Formula> disjuncts;
    flatten_or(f, disjuncts);
    for (Formula d : disjuncts) {
      auto c = clause_of_disjunct(d);
      if (!c) return std::nullopt;
      clauses.push_back(std::move(*c));
    }
  }
  CnfFormula cnf = CnfFormula::from_clauses(std::move(clauses));
  if (dnf_negation(cnf) != f) return std::nullopt;
  return cnf;
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
  for (Literal l : c) {
    auto it = a.find(l.atom.id());
    if (it == a.end()) throw MissingAtomError("assignment has no value for atom '" + l.atom.name() + "'");
    if (it->second == l.positive) return true;
  }
  return false;
}

bool brute_force_satisfiable(const CnfFormula& cnf, std::size_t atom_limit) {
  return brute_force_classify(cnf_formula(cnf), atom_limit) != Classification::Unsatisfiable;
}

std::string render_clause(const Clause& c) {
  std::string out = "{";
  bool first = true;
  for (Literal l : c) {
    if (!first) out += ", ";
    first = false;
    if (!l.positive) out += "~";
    out += l.atom.name();
  }
  return out + "}";
}

std::string write_dimacs(const CnfFormula& cnf) {
  std::unordered_map<std::uint32_t, std::size_t> index;
  std::ostringstream out;
  out << "c atoms:";
  for (std::size_t i = 0; i < cnf.atoms.size(); ++i) {
    index[cnf.atoms[i].id()] = i + 1;
    out << ' ' << cnf.atoms[i].name();
  }
  out << "\np cnf " << cnf.atoms.size() << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (Literal l : c) out << (l.positive ? "" : "-") << index.at(l.atom.id()) << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text, const ParseOptions& opts) {
  std::vector<std::string> names;
  long declared_vars = -1;
  long declared_clauses = -1;
  std::vector<Clause> clauses;
  bool pending_open = false;
  std::size_t offset = 0;

  auto atom_for = [&](long v, std::size_t at) -> Atom {
    if (v < 1 || (declared_vars >= 0 && v > declared_vars))
      throw ParseError(at, "variable index " + std::to_string(v) + " out of range");
    if (static_cast<std::size_t>(v) <= names.size()) return Atom(names[v - 1]);
    return Atom("x" + std::to_string(v));
  };

  std::vector<std::pair<long, std::size_t>> lits;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(offset, nl - offset);
    std::size_t line_at = offset;
    offset = nl + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == 'c') {
      std::string_view rest = line.substr(first + 1);
      std::size_t k = rest.find_first_not_of(" \t");
      if (k != std::string_view::npos && rest.substr(k, 6) == "atoms:") {
        std::istringstream in(std::string(rest.substr(k + 6)));
        std::string name;
        names.clear();
        while (in >> name) {
          if (!is_user_atom_name(name)) throw ParseError(line_at, "malformed atom name '" + name + "'");
          if (is_reserved_name(name) && !opts.allow_reserved)
            throw ReservedNameError("atom '" + name + "' uses the reserved prefix e_");
          names.push_back(name);
        }
      }
      continue;
    }
    if (line[first] == 'p') {
      std::istringstream in(std::string(line.substr(first + 1)));
      std::string fmt;
      if (!(in >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf" || declared_vars < 0 ||
          declared_clauses < 0)
        throw ParseError(line_at, "malformed problem line");
      continue;
    }
    if (declared_vars < 0) throw ParseError(line_at, "clause before problem line");
    std::size_t pos = first;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
      if (pos >= line.size()) break;
      std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
      std::string tok(line.substr(start, pos - start));
      long v = 0;
      std::size_t used = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        throw ParseError(line_at + start, "expected integer literal");
      }
      if (used != tok.size()) throw ParseError(line_at + start, "expected integer literal");
      if (v == 0) {
        std::vector<Literal> c;
        for (auto [x, at] : lits) c.push_back(Literal{atom_for(x < 0 ? -x : x, at), x > 0});
        clauses.emplace_back(std::move(c));
        lits.clear();
        pending_open = false;
      } else {
        lits.emplace_back(v, line_at + start);
        pending_open = true;
      }
    }
  }
  if (pending_open) throw ParseError(text.size(), "unterminated clause");
  if (declared_vars < 0) throw ParseError(text.size(), "missing problem line");
  if (declared_clauses != static_cast<long>(clauses.size()))
    throw ParseError(text.size(), "clause count mismatch: header says " + std::to_string(declared_clauses));
  CnfFormula cnf;
  for (long v = 1; v <= declared_vars; ++v)
    cnf.atoms.push_back(static_cast<std::size_t>(v) <= names.size() ? Atom(names[v - 1])
                                                                     : Atom("x" + std::to_string(v)));
  cnf.clauses = std::move(clauses);
  return cnf;
}

}  // namespace pcw
