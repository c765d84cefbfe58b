#include "pcw/calculi.hpp"

#include <climits>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pcw {

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "NONE";
    case RejectReason::BadPivot: return "BAD_PIVOT";
    case RejectReason::UnknownId: return "UNKNOWN_ID";
    case RejectReason::NotEmptyFinal: return "NOT_EMPTY_FINAL";
    case RejectReason::ReuseInTree: return "REUSE_IN_TREE";
    case RejectReason::ExtendForbidden: return "EXTEND_FORBIDDEN";
    case RejectReason::ExtNotFresh: return "EXT_NOT_FRESH";
    case RejectReason::BadResolvent: return "BAD_RESOLVENT";
    case RejectReason::BadInput: return "BAD_INPUT";
    case RejectReason::BadExtend: return "BAD_EXTEND";
    case RejectReason::BadAxiomInstance: return "BAD_AXIOM_INSTANCE";
    case RejectReason::BadMp: return "BAD_MP";
    case RejectReason::ExtInConclusion: return "EXT_IN_CONCLUSION";
    case RejectReason::SubForbidden: return "SUB_FORBIDDEN";
    case RejectReason::ExtForbidden: return "EXT_FORBIDDEN";
    case RejectReason::UnknownScheme: return "UNKNOWN_SCHEME";
    case RejectReason::BadExtForm: return "BAD_EXT_FORM";
    case RejectReason::BadSub: return "BAD_SUB";
    case RejectReason::EmptyProof: return "EMPTY_PROOF";
    case RejectReason::BadId: return "BAD_ID";
  }
  return "?";
}

std::string CheckReport::verdict_line() const {
  if (accepted) return "ACCEPT";
  return "REJECT " + std::to_string(line_id) + " " + to_string(reason);
}

namespace {

CheckReport reject(CheckReport r, long id, RejectReason why, std::string detail = {}) {
  r.accepted = false;
  r.line_id = id;
  r.reason = why;
  r.detail = std::move(detail);
  return r;
}

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool parse_long(const std::string& s, long& v) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

struct TextLine {
  std::string_view text;
  std::size_t offset;
};

std::vector<TextLine> split_lines(std::string_view text) {
  std::vector<TextLine> out;
  std::size_t at = 0;
  while (at <= text.size()) {
    std::size_t nl = text.find('\n', at);
    if (nl == std::string_view::npos) nl = text.size();
    out.push_back({text.substr(at, nl - at), at});
    at = nl + 1;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Resolution

ResLine ResLine::input(long id, std::size_t index, Clause c) {
  ResLine l;
  l.id = id;
  l.kind = ResKind::Input;
  l.input_index = index;
  l.clause = std::move(c);
  return l;
}

ResLine ResLine::resolve(long id, long p1, long p2, Atom pivot, Clause c) {
  ResLine l;
  l.id = id;
  l.kind = ResKind::Resolve;
  l.p1 = p1;
  l.p2 = p2;
  l.pivot = pivot;
  l.clause = std::move(c);
  return l;
}

ResLine ResLine::extend_def(long id, Atom q, Literal l1, Literal l2) {
  ResLine l;
  l.id = id;
  l.kind = ResKind::ExtendDef;
  l.ext_atom = q;
  l.l1 = l1;
  l.l2 = l2;
  return l;
}

ResLine ResLine::extend_clause(long id, long def_id, int part, Clause c) {
  ResLine l;
  l.id = id;
  l.kind = ResKind::ExtendClause;
  l.def_id = def_id;
  l.part = part;
  l.clause = std::move(c);
  return l;
}

std::vector<Clause> extension_clauses(Atom q, Literal l1, Literal l2) {
  Literal p{q, true};
  return {Clause{~p, l1, l2}, Clause{p, ~l1}, Clause{p, ~l2}};
}

void measure_resolution(const ResolutionProof& proof, std::uint64_t& steps, std::uint64_t& symbols) {
  steps = proof.lines.size();
  symbols = 0;
  for (const ResLine& l : proof.lines) symbols += l.kind == ResKind::ExtendDef ? 4 : l.clause.size() + 1;
}

namespace {

Clause resolvent(const Clause& a, const Clause& b, Atom pivot) {
  std::vector<Literal> lits;
  for (Literal l : a)
    if (l.atom != pivot) lits.push_back(l);
  for (Literal l : b)
    if (l.atom != pivot) lits.push_back(l);
  return Clause(std::move(lits));
}

CheckReport check_res_impl(const CnfFormula& cnf, const ResolutionProof& proof, bool tree_like, bool allow_ext) {
  CheckReport r;
  measure_resolution(proof, r.steps, r.symbols);
  if (proof.lines.empty()) return reject(r, 0, RejectReason::EmptyProof);

  std::unordered_set<std::uint32_t> used;
  for (Atom a : cnf.atoms) used.insert(a.id());
  for (const Clause& c : cnf.clauses)
    for (Literal l : c) used.insert(l.atom.id());

  std::unordered_map<long, std::size_t> index;
  std::unordered_map<long, int> refs;
  long last = LONG_MIN;
  long open_def = 0;
  int next_part = 0;
  const ResLine* def_line = nullptr;

  auto lookup = [&](long id) -> const ResLine* {
    auto it = index.find(id);
    return it == index.end() ? nullptr : &proof.lines[it->second];
  };

  for (std::size_t i = 0; i < proof.lines.size(); ++i) {
    const ResLine& L = proof.lines[i];
    if (L.id <= 0 || L.id <= last) return reject(r, L.id, RejectReason::BadId, "ids must be positive and increasing");
    last = L.id;
    if (!allow_ext && (L.kind == ResKind::ExtendDef || L.kind == ResKind::ExtendClause))
      return reject(r, L.id, RejectReason::ExtendForbidden);
    if (open_def && (L.kind != ResKind::ExtendClause || L.def_id != open_def || L.part != next_part))
      return reject(r, L.id, RejectReason::BadExtend, "definition clauses must follow their declaration in order");

    switch (L.kind) {
      case ResKind::Input:
        if (L.input_index < 1 || L.input_index > cnf.clauses.size())
          return reject(r, L.id, RejectReason::BadInput, "no such input clause");
        if (!L.clause.same_set(cnf.clauses[L.input_index - 1]))
          return reject(r, L.id, RejectReason::BadInput, "clause differs from the input clause");
        break;
      case ResKind::Resolve: {
        const ResLine* a = lookup(L.p1);
        const ResLine* b = lookup(L.p2);
        if (!a || !b) return reject(r, L.id, RejectReason::UnknownId);
        if (a->kind == ResKind::ExtendDef || b->kind == ResKind::ExtendDef)
          return reject(r, L.id, RejectReason::UnknownId, "a declaration is not a clause");
        if (tree_like && (++refs[L.p1] > 1 || ++refs[L.p2] > 1 || L.p1 == L.p2))
          return reject(r, L.id, RejectReason::ReuseInTree);
        if (!a->clause.contains(Literal{L.pivot, true}) || !b->clause.contains(Literal{L.pivot, false}))
          return reject(r, L.id, RejectReason::BadPivot);
        if (!L.clause.same_set(resolvent(a->clause, b->clause, L.pivot)))
          return reject(r, L.id, RejectReason::BadResolvent);
        break;
      }
      case ResKind::ExtendDef:
        if (used.count(L.ext_atom.id()) || L.ext_atom.id() == 0)
          return reject(r, L.id, RejectReason::ExtNotFresh, "atom '" + L.ext_atom.name() + "' already used");
        if (L.l1.atom == L.ext_atom || L.l2.atom == L.ext_atom) return reject(r, L.id, RejectReason::BadExtend);
        used.insert(L.ext_atom.id());
        used.insert(L.l1.atom.id());
        used.insert(L.l2.atom.id());
        open_def = L.id;
        next_part = 0;
        def_line = &L;
        break;
      case ResKind::ExtendClause: {
        if (!open_def) {
          if (!lookup(L.def_id)) return reject(r, L.id, RejectReason::UnknownId);
          return reject(r, L.id, RejectReason::BadExtend, "definition clause out of place");
        }
        Clause expect = extension_clauses(def_line->ext_atom, def_line->l1, def_line->l2)[next_part];
        if (!L.clause.same_set(expect)) return reject(r, L.id, RejectReason::BadExtend, "wrong definition clause");
        if (++next_part == 3) open_def = 0;
        break;
      }
    }
    for (Literal l : L.clause) used.insert(l.atom.id());
    index[L.id] = i;
  }
  if (open_def) return reject(r, open_def, RejectReason::BadExtend, "incomplete definition");
  const ResLine& fin = proof.lines.back();
  if (fin.kind == ResKind::ExtendDef || !fin.clause.empty()) return reject(r, fin.id, RejectReason::NotEmptyFinal);
  r.accepted = true;
  r.empty_clause = true;
  r.conclusion = dnf_negation(cnf);
  return r;
}

}  // namespace

CheckReport check_resolution(const CnfFormula& cnf, const ResolutionProof& proof, bool tree_like) {
  return check_res_impl(cnf, proof, tree_like, false);
}

CheckReport check_extended_resolution(const CnfFormula& cnf, const ResolutionProof& proof) {
  return check_res_impl(cnf, proof, false, true);
}

ResolutionDocument parse_resolution(std::string_view text, const std::string& base_dir) {
  ResolutionDocument doc;
  auto lines = split_lines(text);
  std::size_t li = 0;
  auto next_significant = [&]() -> const TextLine* {
    while (li < lines.size()) {
      const TextLine& t = lines[li++];
      std::string s = trim(t.text);
      if (!s.empty() && !(s[0] == 'c' && (s.size() == 1 || s[1] == ' '))) return &t;
    }
    return nullptr;
  };

  const TextLine* h = next_significant();
  if (!h) throw ParseError(text.size(), "missing system header");
  auto ht = split_ws(h->text);
  if (ht.size() != 2 || ht[0] != "system" || (ht[1] != "RES" && ht[1] != "ER"))
    throw ParseError(h->offset, "expected `system RES|ER`");
  doc.system = ht[1] == "ER" ? ResSystem::ER : ResSystem::Res;

  const TextLine* c = next_significant();
  if (!c) throw ParseError(text.size(), "missing cnf line");
  auto ct = split_ws(c->text);
  if (ct.size() != 2 || ct[0] != "cnf") throw ParseError(c->offset, "expected `cnf <path>`");
  doc.cnf_path = ct[1];
  if (doc.cnf_path == "-") {
    const TextLine* b = next_significant();
    if (!b || trim(b->text) != "begin cnf") throw ParseError(b ? b->offset : text.size(), "expected `begin cnf`");
    std::size_t start = b->offset + b->text.size() + 1;
    std::size_t end = std::string_view::npos;
    while (li < lines.size()) {
      const TextLine& t = lines[li++];
      if (trim(t.text) == "end cnf") {
        end = t.offset;
        break;
      }
    }
    if (end == std::string_view::npos) throw ParseError(text.size(), "missing `end cnf`");
    try {
      doc.cnf = parse_dimacs(text.substr(start, end - start));
    } catch (const ParseError& e) {
      throw ParseError(start + e.offset(), e.what());
    }
  } else {
    std::filesystem::path p(doc.cnf_path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError(c->offset, "cannot read cnf file '" + p.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    doc.cnf = parse_dimacs(ss.str());
  }

  const long V = static_cast<long>(doc.cnf.atoms.size());
  std::unordered_map<long, std::string> ext_names;
  std::unordered_map<long, Atom> ext_atoms;
  std::unordered_map<long, Clause> clause_of;
  std::unordered_map<long, int> def_parts;  // declaration id -> clauses seen

  auto atom_at = [&](long v, std::size_t at) -> Atom {
    long a = v < 0 ? -v : v;
    if (a >= 1 && a <= V) return doc.cnf.atoms[a - 1];
    auto it = ext_atoms.find(a);
    if (it != ext_atoms.end()) return it->second;
    // named but never declared: a free atom outside the CNF
    auto nm = ext_names.find(a);
    if (nm == ext_names.end()) throw ParseError(at, "undeclared atom index " + std::to_string(a));
    return Atom(nm->second);
  };
  auto lit_at = [&](long v, std::size_t at) { return Literal{atom_at(v, at), v > 0}; };

  while (li < lines.size()) {
    const TextLine& t = lines[li++];
    auto tok = split_ws(t.text);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() == 4 && tok[1] == "atom") {
        long idx = 0;
        if (!parse_long(tok[2], idx) || idx <= V) throw ParseError(t.offset, "bad extension atom index");
        if (!is_user_atom_name(tok[3])) throw ParseError(t.offset, "malformed atom name '" + tok[3] + "'");
        ext_names[idx] = tok[3];
      }
      continue;
    }
    long id = 0;
    if (!parse_long(tok[0], id)) throw ParseError(t.offset, "expected line id");
    if (tok.size() >= 2 && tok[1] == "e") {
      long idx = 0, a = 0, b = 0;
      if (tok.size() != 5 || !parse_long(tok[2], idx) || !parse_long(tok[3], a) || !parse_long(tok[4], b) || a == 0 ||
          b == 0)
        throw ParseError(t.offset, "expected `<id> e <index> <lit1> <lit2>`");
      if (idx <= V || ext_atoms.count(idx)) throw ParseError(t.offset, "extension index already in use");
      Literal l1 = lit_at(a, t.offset), l2 = lit_at(b, t.offset);
      auto nm = ext_names.find(idx);
      Atom q(nm != ext_names.end() ? nm->second : "e_x" + std::to_string(idx));
      ext_atoms[idx] = q;
      def_parts[id] = 0;
      doc.proof.lines.push_back(ResLine::extend_def(id, q, l1, l2));
      continue;
    }
    std::size_t k = 1;
    std::vector<Literal> lits;
    bool closed = false;
    for (; k < tok.size(); ++k) {
      long v = 0;
      if (!parse_long(tok[k], v)) throw ParseError(t.offset, "expected literal");
      if (v == 0) {
        closed = true;
        ++k;
        break;
      }
      lits.push_back(lit_at(v, t.offset));
    }
    if (!closed) throw ParseError(t.offset, "unterminated literal list");
    std::vector<std::string> parents;
    closed = false;
    for (; k < tok.size(); ++k) {
      if (tok[k] == "0") {
        closed = true;
        ++k;
        break;
      }
      parents.push_back(tok[k]);
    }
    if (!closed || k != tok.size()) throw ParseError(t.offset, "malformed parent list");
    Clause clause(std::move(lits));
    if (parents.size() == 1 && parents[0].size() > 1 && parents[0][0] == 'i') {
      long idx = 0;
      if (!parse_long(parents[0].substr(1), idx) || idx < 1) throw ParseError(t.offset, "bad input index");
      doc.proof.lines.push_back(ResLine::input(id, static_cast<std::size_t>(idx), clause));
    } else if (parents.size() == 1) {
      long d = 0;
      if (!parse_long(parents[0], d)) throw ParseError(t.offset, "bad parent id");
      auto it = def_parts.find(d);
      int part = it == def_parts.end() ? 0 : it->second++;
      doc.proof.lines.push_back(ResLine::extend_clause(id, d, part, clause));
    } else if (parents.size() == 2) {
      long a = 0, b = 0;
      if (!parse_long(parents[0], a) || !parse_long(parents[1], b)) throw ParseError(t.offset, "bad parent id");
      Atom pivot;
      auto ia = clause_of.find(a), ib = clause_of.find(b);
      if (ia != clause_of.end() && ib != clause_of.end()) {
        for (Literal l : ia->second) {
          if (!l.positive || !ib->second.contains(~l)) continue;
          if (pivot.id() == 0) pivot = l.atom;
          if (clause.same_set(resolvent(ia->second, ib->second, l.atom))) {
            pivot = l.atom;
            break;
          }
        }
      }
      doc.proof.lines.push_back(ResLine::resolve(id, a, b, pivot, clause));
    } else {
      throw ParseError(t.offset, "expected one or two parents");
    }
    clause_of[id] = doc.proof.lines.back().clause;
  }
  return doc;
}

std::string write_resolution(const ResolutionDocument& doc) {
  std::ostringstream out;
  out << "system " << (doc.system == ResSystem::ER ? "ER" : "RES") << '\n';
  if (doc.cnf_path.empty() || doc.cnf_path == "-") {
    out << "cnf -\nbegin cnf\n" << write_dimacs(doc.cnf) << "end cnf\n";
  } else {
    out << "cnf " << doc.cnf_path << '\n';
  }
  std::unordered_map<std::uint32_t, long> idx;
  for (std::size_t i = 0; i < doc.cnf.atoms.size(); ++i) idx[doc.cnf.atoms[i].id()] = static_cast<long>(i + 1);
  long next = static_cast<long>(doc.cnf.atoms.size());
  auto lit = [&](Literal l) {
    auto it = idx.find(l.atom.id());
    if (it == idx.end()) {
      long k = ++next;
      out << "c atom " << k << ' ' << l.atom.name() << '\n';
      it = idx.emplace(l.atom.id(), k).first;
    }
    return l.positive ? it->second : -it->second;
  };
  for (const ResLine& L : doc.proof.lines) {
    if (L.kind == ResKind::ExtendDef) {
      long a = lit(L.l1), b = lit(L.l2);
      long k = ++next;
      out << "c atom " << k << ' ' << L.ext_atom.name() << '\n';
      out << L.id << " e " << k << ' ' << a << ' ' << b << '\n';
      idx[L.ext_atom.id()] = k;
      continue;
    }
    std::vector<long> vals;
    for (Literal l : L.clause) vals.push_back(lit(l));
    out << L.id;
    for (long v : vals) out << ' ' << v;
    out << " 0";
    switch (L.kind) {
      case ResKind::Input: out << " i" << L.input_index; break;
      case ResKind::Resolve: out << ' ' << L.p1 << ' ' << L.p2; break;
      case ResKind::ExtendClause: out << ' ' << L.def_id; break;
      case ResKind::ExtendDef: break;
    }
    out << " 0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Frege family

std::string to_string(FregeVariant v) {
  switch (v) {
    case FregeVariant::F: return "F";
    case FregeVariant::EF: return "EF";
    case FregeVariant::SF: return "SF";
  }
  return "?";
}

Formula frege_scheme(int k) {
  static const std::vector<Formula> schemes = [] {
    ParseOptions pat{.allow_patterns = true};
    const char* src[kSchemeCount] = {
        "(imp P (imp Q P))",
        "(imp (imp P (imp Q R)) (imp (imp P Q) (imp P R)))",
        "(imp (and P Q) P)",
        "(imp (and P Q) Q)",
        "(imp P (imp Q (and P Q)))",
        "(imp P (or P Q))",
        "(imp Q (or P Q))",
        "(imp (imp P R) (imp (imp Q R) (imp (or P Q) R)))",
        "(imp (imp P Q) (imp (imp P (not Q)) (not P)))",
        "(imp (not (not P)) P)",
        "1",
        "(imp 0 P)",
    };
    std::vector<Formula> out;
    for (const char* s : src) out.push_back(parse_formula(s, pat));
    return out;
  }();
  if (k < 1 || k > kSchemeCount) throw std::out_of_range("no scheme A" + std::to_string(k));
  return schemes[k - 1];
}

CheckReport check_frege_family(const HilbertProof& proof) {
  CheckReport r;
  r.steps = proof.lines.size();
  for (const HilLine& l : proof.lines) r.symbols += l.formula.size();
  if (proof.lines.empty()) return reject(r, 0, RejectReason::EmptyProof);

  Formula final = proof.lines.back().formula;
  std::unordered_set<std::uint32_t> final_atoms;
  for (Atom a : atoms_of(final)) final_atoms.insert(a.id());

  std::unordered_set<std::uint32_t> seen;
  std::unordered_set<const Node*> visited;
  std::vector<Formula> stack;
  auto note_atoms = [&](Formula f) {
    stack.push_back(f);
    while (!stack.empty()) {
      Formula g = stack.back();
      stack.pop_back();
      if (!visited.insert(g.node()).second) continue;
      switch (g.kind()) {
        case Kind::Var: seen.insert(g.atom().id()); break;
        case Kind::Not: stack.push_back(g.child()); break;
        case Kind::And:
        case Kind::Or:
          stack.push_back(g.left());
          stack.push_back(g.right());
          break;
        default: break;
      }
    }
  };

  std::unordered_map<long, std::size_t> index;
  long last = LONG_MIN;
  for (std::size_t i = 0; i < proof.lines.size(); ++i) {
    const HilLine& L = proof.lines[i];
    if (L.id <= 0 || L.id <= last) return reject(r, L.id, RejectReason::BadId, "ids must be positive and increasing");
    last = L.id;
    switch (L.kind) {
      case HilKind::Ax: {
        if (L.scheme < 1 || L.scheme > kSchemeCount) return reject(r, L.id, RejectReason::UnknownScheme);
        Formula s = frege_scheme(L.scheme);
        for (const auto& kv : L.subst)
          if (!occurs_in(kv.first, s))
            return reject(r, L.id, RejectReason::BadAxiomInstance, "'" + kv.first.name() + "' is not in the scheme");
        if (apply_substitution(s, L.subst) != L.formula) return reject(r, L.id, RejectReason::BadAxiomInstance);
        break;
      }
      case HilKind::Mp: {
        auto a = index.find(L.p1), b = index.find(L.p2);
        if (a == index.end() || b == index.end()) return reject(r, L.id, RejectReason::UnknownId);
        Formula major = proof.lines[a->second].formula;
        Formula minor = proof.lines[b->second].formula;
        if (major.kind() != Kind::Or || major.left().kind() != Kind::Not || major.left().child() != minor ||
            major.right() != L.formula)
          return reject(r, L.id, RejectReason::BadMp);
        break;
      }
      case HilKind::Ext: {
        if (proof.variant != FregeVariant::EF) return reject(r, L.id, RejectReason::ExtForbidden);
        Formula f = L.formula;
        Formula q = Formula::var(L.ext_atom);
        bool shape = f.kind() == Kind::And && f.left().kind() == Kind::Or && f.right().kind() == Kind::Or &&
                     f.left().left() == Formula::negation(q) && f.right().right() == q &&
                     f.right().left().kind() == Kind::Not && f.right().left().child() == f.left().right();
        if (!shape || L.ext_atom.id() == 0) return reject(r, L.id, RejectReason::BadExtForm);
        Formula d = f.left().right();
        if (occurs_in(L.ext_atom, d) || seen.count(L.ext_atom.id()))
          return reject(r, L.id, RejectReason::ExtNotFresh, "atom '" + L.ext_atom.name() + "' already used");
        if (final_atoms.count(L.ext_atom.id())) return reject(r, L.id, RejectReason::ExtInConclusion);
        break;
      }
      case HilKind::Sub: {
        if (proof.variant != FregeVariant::SF) return reject(r, L.id, RejectReason::SubForbidden);
        auto a = index.find(L.p1);
        if (a == index.end()) return reject(r, L.id, RejectReason::UnknownId);
        if (apply_substitution(proof.lines[a->second].formula, L.subst) != L.formula)
          return reject(r, L.id, RejectReason::BadSub);
        break;
      }
    }
    note_atoms(L.formula);
    index[L.id] = i;
  }
  r.accepted = true;
  r.conclusion = final;
  return r;
}

namespace {

Substitution parse_subst(std::string_view text, std::size_t& pos, std::size_t base) {
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  Substitution s;
  skip();
  if (pos >= text.size() || text[pos] != '{') throw ParseError(base + pos, "expected '{'");
  ++pos;
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
    return s;
  }
  ParseOptions opts{.allow_reserved = true};
  while (true) {
    skip();
    std::size_t eq = text.find('=', pos);
    if (eq == std::string_view::npos) throw ParseError(base + pos, "expected '='");
    std::string key = trim(text.substr(pos, eq - pos));
    if (!is_user_atom_name(key) && !is_pattern_name(key))
      throw ParseError(base + pos, "bad substitution key '" + key + "'");
    pos = eq + 1;
    Formula f = Formula::one();
    try {
      f = parse_formula_at(text, pos, opts);
    } catch (const ParseError& e) {
      throw ParseError(base + e.offset(), e.what());
    }
    if (!s.emplace(Atom(key), f).second) throw ParseError(base + pos, "duplicate key '" + key + "'");
    skip();
    if (pos < text.size() && text[pos] == ';') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return s;
    }
    throw ParseError(base + pos, "expected ';' or '}'");
  }
}

}  // namespace

HilbertProof parse_hilbert(std::string_view text) {
  HilbertProof proof;
  bool have_header = false;
  ParseOptions fopts{.allow_reserved = true};
  for (const TextLine& t : split_lines(text)) {
    std::string s = trim(t.text);
    if (s.empty() || s[0] == '#') continue;
    if (!have_header) {
      auto tok = split_ws(s);
      if (tok.size() != 2 || tok[0] != "system") throw ParseError(t.offset, "expected `system F|EF|SF`");
      if (tok[1] == "F") proof.variant = FregeVariant::F;
      else if (tok[1] == "EF") proof.variant = FregeVariant::EF;
      else if (tok[1] == "SF") proof.variant = FregeVariant::SF;
      else throw ParseError(t.offset, "unknown system '" + tok[1] + "'");
      have_header = true;
      continue;
    }
    std::string_view line = t.text;
    std::size_t bar1 = line.find('|');
    std::size_t bar2 = bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos) throw ParseError(t.offset, "expected `<id> | <formula> | <rule>`");
    HilLine L;
    if (!parse_long(trim(line.substr(0, bar1)), L.id)) throw ParseError(t.offset, "bad line id");
    std::string_view ftext = line.substr(bar1 + 1, bar2 - bar1 - 1);
    try {
      L.formula = parse_formula(ftext, fopts);
    } catch (const ParseError& e) {
      throw ParseError(t.offset + bar1 + 1 + e.offset(), e.what());
    }
    std::string_view rule = line.substr(bar2 + 1);
    std::size_t rbase = t.offset + bar2 + 1;
    std::size_t pos = 0;
    while (pos < rule.size() && (rule[pos] == ' ' || rule[pos] == '\t')) ++pos;
    std::size_t kw_end = rule.find_first_of(" \t", pos);
    if (kw_end == std::string_view::npos) kw_end = rule.size();
    std::string kw(rule.substr(pos, kw_end - pos));
    pos = kw_end;
    auto word = [&]() {
      while (pos < rule.size() && (rule[pos] == ' ' || rule[pos] == '\t')) ++pos;
      std::size_t e = rule.find_first_of(" \t{\r", pos);
      if (e == std::string_view::npos) e = rule.size();
      std::string w(rule.substr(pos, e - pos));
      pos = e;
      return w;
    };
    auto finish = [&]() {
      if (!trim(rule.substr(pos)).empty()) throw ParseError(rbase + pos, "trailing text after rule");
    };
    if (kw == "AX") {
      L.kind = HilKind::Ax;
      std::string sid = word();
      long k = -1;
      if (sid.size() >= 2 && sid[0] == 'A' && parse_long(sid.substr(1), k) && k >= 0 && k < 1000)
        L.scheme = static_cast<int>(k);
      else
        L.scheme = -1;
      L.subst = parse_subst(rule, pos, rbase);
      finish();
    } else if (kw == "MP") {
      L.kind = HilKind::Mp;
      if (!parse_long(word(), L.p1) || !parse_long(word(), L.p2)) throw ParseError(rbase + pos, "expected `MP i j`");
      finish();
    } else if (kw == "EXT") {
      L.kind = HilKind::Ext;
      std::string a = word();
      if (!is_user_atom_name(a)) throw ParseError(rbase + pos, "bad extension atom");
      L.ext_atom = Atom(a);
      finish();
    } else if (kw == "SUB") {
      L.kind = HilKind::Sub;
      if (!parse_long(word(), L.p1)) throw ParseError(rbase + pos, "expected `SUB i {..}`");
      L.subst = parse_subst(rule, pos, rbase);
      finish();
    } else {
      throw ParseError(rbase, "unknown rule '" + kw + "'");
    }
    proof.lines.push_back(std::move(L));
  }
  if (!have_header) throw ParseError(text.size(), "missing system header");
  return proof;
}

std::string write_hilbert(const HilbertProof& proof) {
  std::string out = "system " + to_string(proof.variant) + "\n";
  for (const HilLine& L : proof.lines) {
    out += std::to_string(L.id);
    out += " | ";
    render_formula(L.formula, out);
    out += " | ";
    switch (L.kind) {
      case HilKind::Ax: out += "AX A" + std::to_string(L.scheme) + " " + render_substitution(L.subst); break;
      case HilKind::Mp: out += "MP " + std::to_string(L.p1) + " " + std::to_string(L.p2); break;
      case HilKind::Ext: out += "EXT " + L.ext_atom.name(); break;
      case HilKind::Sub: out += "SUB " + std::to_string(L.p1) + " " + render_substitution(L.subst); break;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<Calculus> parse_calculus(std::string_view name) {
  if (name == "RES") return Calculus::Res;
  if (name == "TREE" || name == "TREERES") return Calculus::TreeRes;
  if (name == "ER") return Calculus::ER;
  if (name == "F") return Calculus::F;
  if (name == "EF") return Calculus::EF;
  if (name == "SF") return Calculus::SF;
  return std::nullopt;
}

std::string to_string(Calculus c) {
  switch (c) {
    case Calculus::Res: return "RES";
    case Calculus::TreeRes: return "TREERES";
    case Calculus::ER: return "ER";
    case Calculus::F: return "F";
    case Calculus::EF: return "EF";
    case Calculus::SF: return "SF";
  }
  return "?";
}

Formula as_function(Calculus system, std::string_view w, const std::string& base_dir) {
  try {
    switch (system) {
      case Calculus::Res:
      case Calculus::TreeRes:
      case Calculus::ER: {
        ResolutionDocument doc = parse_resolution(w, base_dir);
        doc.cnf.validate();
        if (system != Calculus::ER && doc.system != ResSystem::Res) return Formula::one();
        CheckReport r = system == Calculus::ER ? check_extended_resolution(doc.cnf, doc.proof)
                                               : check_resolution(doc.cnf, doc.proof, system == Calculus::TreeRes);
        return r.accepted ? *r.conclusion : Formula::one();
      }
      case Calculus::F:
      case Calculus::EF:
      case Calculus::SF: {
        HilbertProof p = parse_hilbert(w);
        FregeVariant want = system == Calculus::F ? FregeVariant::F
                            : system == Calculus::EF ? FregeVariant::EF
                                                     : FregeVariant::SF;
        if (p.variant != want) return Formula::one();
        CheckReport r = check_frege_family(p);
        return r.accepted ? *r.conclusion : Formula::one();
      }
    }
  } catch (const std::exception&) {
  }
  return Formula::one();
}

}  // namespace pcw
