#include "pcw/simulations.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "pcw/proof_builder.hpp"
#include "pcw/resolution_tools.hpp"

namespace pcw {

AnyProof AnyProof::of(HilbertProof p) {
  AnyProof a;
  switch (p.variant) {
    case FregeVariant::F: a.system = Calculus::F; break;
    case FregeVariant::EF: a.system = Calculus::EF; break;
    case FregeVariant::SF: a.system = Calculus::SF; break;
  }
  a.hilbert = std::move(p);
  return a;
}

AnyProof AnyProof::of(ResolutionDocument d, Calculus system) {
  AnyProof a;
  a.system = system;
  d.system = system == Calculus::ER ? ResSystem::ER : ResSystem::Res;
  a.refutation = std::move(d);
  return a;
}

bool AnyProof::refutational() const {
  return system == Calculus::Res || system == Calculus::TreeRes || system == Calculus::ER;
}

CheckReport AnyProof::check() const {
  switch (system) {
    case Calculus::Res: return check_resolution(refutation.cnf, refutation.proof, false);
    case Calculus::TreeRes: return check_resolution(refutation.cnf, refutation.proof, true);
    case Calculus::ER: return check_extended_resolution(refutation.cnf, refutation.proof);
    default: {
      if (hilbert.variant != (system == Calculus::F ? FregeVariant::F
                              : system == Calculus::EF ? FregeVariant::EF
                                                       : FregeVariant::SF)) {
        CheckReport r;
        r.reason = RejectReason::BadId;
        r.detail = "header does not match the system";
        return r;
      }
      return check_frege_family(hilbert);
    }
  }
}

std::string AnyProof::text() const { return refutational() ? write_resolution(refutation) : write_hilbert(hilbert); }

std::string TranslationResult::stats_line() const {
  return "source_symbols=" + std::to_string(source_symbols) + " target_symbols=" + std::to_string(target_symbols);
}

bool supported_pair(Calculus from, Calculus to) {
  switch (to) {
    case Calculus::EF:
      return from == Calculus::F || from == Calculus::ER || from == Calculus::Res || from == Calculus::TreeRes;
    case Calculus::ER:
    case Calculus::SF: return from == Calculus::EF;
    default: return false;
  }
}

namespace {

Formula fneg(Formula f) { return Formula::negation(f); }

std::vector<Formula> with_head(Formula h, const Clause& c) {
  std::vector<Formula> v{h};
  for (Literal l : c) v.push_back(literal_formula(l));
  return v;
}

// ---------------------------------------------------------------------------

HilbertProof er_to_ef(const ResolutionDocument& doc) {
  const CnfFormula& cnf = doc.cnf;
  ProofBuilder pb(FregeVariant::EF);
  std::vector<Formula> leaves;
  for (const Clause& c : cnf.clauses) leaves.push_back(negated_clause_formula(c));
  DisjunctionContext ctx(pb, leaves, false, "");
  const Formula N = ctx.head();

  struct Proved {
    long line;
    std::vector<Formula> items;
  };
  std::unordered_map<long, Proved> proved;
  std::unordered_map<long, long> ext_line;  // declaration id -> EXT line

  for (const ResLine& L : doc.proof.lines) {
    switch (L.kind) {
      case ResKind::Input: {
        std::size_t k = L.input_index - 1;
        const Clause& c = cnf.clauses[k];
        long lem = pb.clause_lemma(c);
        long line;
        if (c.empty()) {
          line = pb.mp(ctx.leaf_to_head(k), lem);
        } else {
          std::vector<Formula> from{leaves[k]};
          for (Literal l : c) from.push_back(literal_formula(l));
          line = pb.restructure(lem, from, with_head(N, c), LemmaMap{{leaves[k], ctx.leaf_to_head(k)}});
        }
        proved[L.id] = {line, with_head(N, c)};
        break;
      }
      case ResKind::Resolve: {
        const Proved& a = proved.at(L.p1);
        const Proved& b = proved.at(L.p2);
        long line = pb.resolve(a.line, a.items, b.line, b.items, Formula::var(L.pivot), with_head(N, L.clause));
        proved[L.id] = {line, with_head(N, L.clause)};
        break;
      }
      case ResKind::ExtendDef:
        ext_line[L.id] = pb.ext(L.ext_atom, Formula::disj(literal_formula(L.l1), literal_formula(L.l2)));
        break;
      case ResKind::ExtendClause: {
        long e = ext_line.at(L.def_id);
        const ResLine* def = nullptr;
        for (const ResLine& d : doc.proof.lines)
          if (d.id == L.def_id) def = &d;
        Formula q = Formula::var(def->ext_atom);
        Formula f1 = literal_formula(def->l1), f2 = literal_formula(def->l2);
        long line;
        std::vector<Formula> from;
        LemmaMap lem;
        if (L.part == 0) {
          line = pb.and_elim(e, true);  // q -> l1 | l2
          from = {fneg(q), f1, f2};
        } else {
          Formula fl = L.part == 1 ? f1 : f2;
          Literal l = L.part == 1 ? def->l1 : def->l2;
          line = pb.trans(pb.ax(L.part == 1 ? 6 : 7, {f1, f2}), pb.and_elim(e, false));  // l -> q
          from = {fneg(fl), q};
          if (!l.positive) lem[fneg(fl)] = pb.ax(10, {Formula::var(l.atom)});
        }
        line = pb.restructure(line, from, with_head(N, L.clause), lem);
        proved[L.id] = {line, with_head(N, L.clause)};
        break;
      }
    }
  }
  long fin = proved.at(doc.proof.lines.back().id).line;
  pb.restate(fin);
  return pb.take();
}

// ---------------------------------------------------------------------------

HilbertProof ef_to_sf(const HilbertProof& src) {
  std::vector<const HilLine*> exts;
  for (const HilLine& L : src.lines)
    if (L.kind == HilKind::Ext) exts.push_back(&L);
  if (exts.empty()) {
    HilbertProof out = src;
    out.variant = FregeVariant::SF;
    return out;
  }
  ProofBuilder pb(FregeVariant::SF);
  std::size_t r = exts.size();
  // G[k] is the conjunction of the first k+1 extension formulas, newest on the left
  std::vector<Formula> G(r, Formula::one());
  G[0] = exts[0]->formula;
  for (std::size_t k = 1; k < r; ++k) G[k] = Formula::conj(exts[k]->formula, G[k - 1]);
  Formula g = G[r - 1];

  std::vector<long> proj(r);
  long to_k = pb.identity(g);  // g -> G[k]
  for (std::size_t k = r; k-- > 0;) {
    proj[k] = k == 0 ? to_k : pb.trans(to_k, pb.ax(3, {exts[k]->formula, G[k - 1]}));
    if (k > 0) to_k = pb.trans(to_k, pb.ax(4, {exts[k]->formula, G[k - 1]}));
  }

  std::unordered_map<long, long> under_g;
  std::unordered_map<long, std::size_t> ext_index;
  for (std::size_t k = 0; k < r; ++k) ext_index[exts[k]->id] = k;
  std::unordered_map<long, Formula> formula_of;
  for (const HilLine& L : src.lines) {
    formula_of.emplace(L.id, L.formula);
    long line = 0;
    switch (L.kind) {
      case HilKind::Ax: line = pb.weaken(pb.ax(L.scheme, L.subst), g); break;
      case HilKind::Ext: line = proj[ext_index.at(L.id)]; break;
      case HilKind::Mp: {
        Formula imp = formula_of.at(L.p1);
        long a2 = pb.ax(2, {g, antecedent(imp), consequent(imp)});
        line = pb.mp(pb.mp(a2, under_g.at(L.p1)), under_g.at(L.p2));
        break;
      }
      case HilKind::Sub: throw std::logic_error("substitution line in an EF proof");
    }
    under_g[L.id] = line;
  }

  long cur = under_g.at(src.lines.back().id);  // G[k] -> A
  for (std::size_t k = r; k-- > 0;) {
    Formula d = exts[k]->formula.left().right();
    long s = pb.sub(cur, Substitution{{exts[k]->ext_atom, d}});
    long id_d = pb.identity(d);
    long iff_dd = pb.and_intro(id_d, id_d);
    if (k == 0) {
      cur = pb.mp(s, iff_dd);
    } else {
      Formula i = Formula::iff(d, d);
      long a5 = pb.mp(pb.ax(5, {i, G[k - 1]}), iff_dd);
      cur = pb.trans(a5, s);
    }
  }
  pb.restate(cur);
  return pb.take();
}

// ---------------------------------------------------------------------------

class EfToEr {
public:
  EfToEr(const HilbertProof& src, const CnfFormula& cnf) : src_(src), cnf_(cnf) {
    std::unordered_set<const Node*> seen;
    std::vector<Formula> stack;
    for (const HilLine& L : src.lines) {
      stack.push_back(L.formula);
      if (L.kind == HilKind::Ext) taken_.insert(L.ext_atom.id());
      while (!stack.empty()) {
        Formula f = stack.back();
        stack.pop_back();
        if (!seen.insert(f.node()).second) continue;
        switch (f.kind()) {
          case Kind::Var: taken_.insert(f.atom().id()); break;
          case Kind::Not: stack.push_back(f.child()); break;
          case Kind::And:
          case Kind::Or:
            stack.push_back(f.left());
            stack.push_back(f.right());
            break;
          default: break;
        }
      }
    }
  }

  ResolutionProof run() {
    std::unordered_map<long, const HilLine*> by_id;
    for (const HilLine& L : src_.lines) {
      by_id[L.id] = &L;
      switch (L.kind) {
        case HilKind::Ax:
          if (prove_by_skeleton(frege_scheme(L.scheme), L.formula, {})) return w_.take();
          break;
        case HilKind::Ext: {
          Formula d = L.formula.left().right();
          Literal ld = lit(d);
          auto ids = w_.extend(L.ext_atom, ld, ld);
          defs_[L.ext_atom.id()] = {ids[0], ids[1], ids[2]};
          Formula pat = Formula::iff(Formula::var("Q"), Formula::var("P"));
          if (prove_by_skeleton(pat, L.formula, {ids[0], ids[1], ids[2]})) return w_.take();
          break;
        }
        case HilKind::Mp: {
          Formula imp = by_id.at(L.p1)->formula;
          Literal target = lit(L.formula);
          if (units_.count(key(target))) break;
          std::vector<long> pool{units_.at(key(lit(imp))), units_.at(key(lit(antecedent(imp))))};
          add_defs(pool, imp);
          if (settle(derive_by_dpll(w_, pool, Clause{target}), target)) return w_.take();
          break;
        }
        case HilKind::Sub: throw std::logic_error("substitution line in an EF proof");
      }
    }
    finish(src_.lines.back().formula);
    return w_.take();
  }

private:
  static std::uint64_t key(Literal l) { return (std::uint64_t(l.atom.id()) << 1) | (l.positive ? 1 : 0); }

  Atom fresh() {
    for (;;) {
      Atom a("e_t" + std::to_string(++counter_));
      if (!taken_.count(a.id())) return a;
    }
  }

  Literal define(Literal l1, Literal l2) {
    Atom t = fresh();
    auto ids = w_.extend(t, l1, l2);
    defs_[t.id()] = {ids[0], ids[1], ids[2]};
    return Literal{t, true};
  }

  Literal true_lit() {
    if (!t1_) {
      Literal z{cnf_.atoms.front(), true};
      Literal t = define(z, ~z);
      auto& d = defs_[t.atom.id()];
      units_[key(t)] = w_.resolve(d[1], d[2], z.atom);
      t1_ = t;
    }
    return *t1_;
  }

  Literal lit(Formula f) {
    auto it = lits_.find(f);
    if (it != lits_.end()) return it->second;
    Literal out;
    switch (f.kind()) {
      case Kind::Var: out = Literal{f.atom(), true}; break;
      case Kind::Not: out = ~lit(f.child()); break;
      case Kind::Or: out = define(lit(f.left()), lit(f.right())); break;
      case Kind::And: out = ~define(~lit(f.left()), ~lit(f.right())); break;
      case Kind::One: out = true_lit(); break;
      case Kind::Zero: out = ~true_lit(); break;
    }
    lits_.emplace(f, out);
    return out;
  }

  // definition clauses of the Tseitin atom of f, if it has one
  void add_defs(std::vector<long>& pool, Formula f) {
    if (f.kind() == Kind::Or || f.kind() == Kind::And) {
      auto& d = defs_.at(lit(f).atom.id());
      pool.insert(pool.end(), d.begin(), d.end());
    } else if (f.is_constant()) {
      pool.push_back(units_.at(key(true_lit())));
    }
  }

  // returns true when the empty clause was reached
  bool settle(long id, Literal target) {
    if (w_.clause(id).empty()) return true;
    units_[key(target)] = id;
    return false;
  }

  bool prove_by_skeleton(Formula pattern, Formula f, std::vector<long> pool) {
    Literal target = lit(f);
    if (units_.count(key(target))) return false;
    std::function<void(Formula, Formula)> walk = [&](Formula p, Formula g) {
      if (p.kind() == Kind::Var) return;
      add_defs(pool, g);
      if (p.kind() == Kind::Not) walk(p.child(), g.child());
      if (p.kind() == Kind::And || p.kind() == Kind::Or) {
        walk(p.left(), g.left());
        walk(p.right(), g.right());
      }
    };
    walk(pattern, f);
    return settle(derive_by_dpll(w_, pool, Clause{target}), target);
  }

  void finish(Formula a) {
    std::vector<long> inputs;
    std::unordered_map<Formula, std::size_t, FormulaHash> leaf_of;
    for (std::size_t i = 0; i < cnf_.clauses.size(); ++i) {
      inputs.push_back(w_.input(i + 1, cnf_.clauses[i]));
      leaf_of.emplace(negated_clause_formula(cnf_.clauses[i]), i);
    }
    // {~lit(g)} for every node of the disjunction spine, bottom-up
    std::function<long(Formula)> refute_node = [&](Formula g) -> long {
      Literal target = ~lit(g);
      auto u = units_.find(key(target));
      if (u != units_.end()) return u->second;
      std::vector<long> pool;
      if (g.kind() == Kind::Or) {
        pool = {refute_node(g.left()), refute_node(g.right())};
        add_defs(pool, g);
      } else {
        pool.push_back(inputs[leaf_of.at(g)]);
        for (Formula h = g; h.kind() == Kind::And; h = h.right()) add_defs(pool, h);
      }
      long id = derive_by_dpll(w_, pool, Clause{target});
      units_[key(target)] = id;
      return id;
    };
    long neg_a = refute_node(a);
    if (w_.clause(neg_a).empty()) return;
    long pos_a = units_.at(key(lit(a)));
    w_.resolve(pos_a, neg_a, lit(a).atom);
  }

  const HilbertProof& src_;
  const CnfFormula& cnf_;
  ResolutionWriter w_;
  std::unordered_set<std::uint32_t> taken_;
  std::unordered_map<Formula, Literal, FormulaHash> lits_;
  std::unordered_map<std::uint32_t, std::array<long, 3>> defs_;
  std::unordered_map<std::uint64_t, long> units_;
  std::optional<Literal> t1_;
  long counter_ = 0;
};

ResolutionDocument ef_to_er(const HilbertProof& src, Formula conclusion) {
  auto cnf = cnf_from_dnf(conclusion);
  if (!cnf) throw UnsupportedPairError("EF->ER: conclusion is not the negation of a CNF");
  ResolutionDocument doc;
  doc.system = ResSystem::ER;
  doc.cnf_path = "-";
  doc.cnf = *cnf;
  for (std::size_t i = 0; i < cnf->clauses.size(); ++i)
    if (cnf->clauses[i].empty()) {
      doc.proof.lines.push_back(ResLine::input(1, i + 1, Clause{}));
      return doc;
    }
  EfToEr t(src, doc.cnf);
  doc.proof = t.run();
  return doc;
}

}  // namespace

TranslationResult translate(Calculus from, Calculus to, const AnyProof& source) {
  if (!supported_pair(from, to))
    throw UnsupportedPairError("no translation " + to_string(from) + " -> " + to_string(to));
  if (source.system != from)
    throw SourceInvalidError("source is a " + to_string(source.system) + " proof, not " + to_string(from));
  CheckReport src = source.check();
  if (!src.accepted) throw SourceInvalidError("source rejected: " + src.verdict_line());

  TranslationResult out;
  out.source_symbols = src.symbols;
  out.conclusion = *src.conclusion;
  switch (to) {
    case Calculus::EF:
      if (from == Calculus::F) {
        HilbertProof p = source.hilbert;
        p.variant = FregeVariant::EF;
        out.target = AnyProof::of(std::move(p));
      } else {
        out.target = AnyProof::of(er_to_ef(source.refutation));
      }
      break;
    case Calculus::SF: out.target = AnyProof::of(ef_to_sf(source.hilbert)); break;
    case Calculus::ER: out.target = AnyProof::of(ef_to_er(source.hilbert, out.conclusion), Calculus::ER); break;
    default: break;
  }
  CheckReport tgt = out.target.check();
  if (!tgt.accepted || !tgt.conclusion || *tgt.conclusion != out.conclusion)
    throw std::logic_error("translation produced an invalid proof: " + tgt.verdict_line());
  out.target_symbols = tgt.symbols;
  return out;
}

double log_log_slope(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& points) {
  double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    double lx = std::log(static_cast<double>(x)), ly = std::log(static_cast<double>(y));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double den = n * sxx - sx * sx;
  if (n < 2 || std::abs(den) < 1e-12) return 0.0;
  return (n * sxy - sx * sy) / den;
}

SimulationReport simulation_report(Calculus from, Calculus to, const std::vector<AnyProof>& corpus) {
  if (corpus.empty()) throw EmptyCorpusError("empty corpus");
  SimulationReport rep;
  for (const AnyProof& p : corpus) {
    TranslationResult t = translate(from, to, p);
    rep.points.emplace_back(t.source_symbols, t.target_symbols);
  }
  rep.slope = log_log_slope(rep.points);
  return rep;
}

}  // namespace pcw
