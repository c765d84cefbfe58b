#include "pcw/proof_builder.hpp"

#include <optional>

namespace pcw {

Formula antecedent(Formula imp) {
  if (imp.kind() != Kind::Or || imp.left().kind() != Kind::Not)
    throw std::logic_error("not an implication: " + render_formula(imp));
  return imp.left().child();
}

Formula consequent(Formula imp) {
  if (imp.kind() != Kind::Or || imp.left().kind() != Kind::Not)
    throw std::logic_error("not an implication: " + render_formula(imp));
  return imp.right();
}

namespace {
Formula imp(Formula a, Formula b) { return Formula::imp(a, b); }
Formula neg(Formula a) { return Formula::negation(a); }
}  // namespace

ProofBuilder::ProofBuilder(FregeVariant variant) { proof_.variant = variant; }

long ProofBuilder::add(HilLine line, bool force) {
  if (line.kind != HilKind::Ext && !force) {
    auto it = proven_.find(line.formula);
    if (it != proven_.end()) return it->second;
  }
  line.id = next_id_++;
  index_[line.id] = proof_.lines.size();
  proven_.emplace(line.formula, line.id);
  proof_.lines.push_back(std::move(line));
  return proof_.lines.back().id;
}

Formula ProofBuilder::formula(long id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("no line " + std::to_string(id));
  return proof_.lines[it->second].formula;
}

long ProofBuilder::ax(int scheme, const Substitution& s) {
  HilLine l;
  l.kind = HilKind::Ax;
  l.scheme = scheme;
  l.subst = s;
  l.formula = apply_substitution(frege_scheme(scheme), s);
  return add(std::move(l));
}

long ProofBuilder::ax(int scheme, std::initializer_list<Formula> args) {
  static const Atom names[3] = {Atom("P"), Atom("Q"), Atom("R")};
  Formula pattern = frege_scheme(scheme);
  Substitution s;
  std::size_t k = 0;
  for (Formula f : args) {
    if (k >= 3) throw ArityError("at most three scheme arguments");
    if (occurs_in(names[k], pattern)) s[names[k]] = f;
    ++k;
  }
  return ax(scheme, s);
}

long ProofBuilder::mp(long imp_line, long antecedent_line) {
  Formula major = formula(imp_line);
  if (antecedent(major) != formula(antecedent_line))
    throw std::logic_error("modus ponens premises do not match at line " + std::to_string(imp_line));
  HilLine l;
  l.kind = HilKind::Mp;
  l.p1 = imp_line;
  l.p2 = antecedent_line;
  l.formula = consequent(major);
  return add(std::move(l));
}

long ProofBuilder::ext(Atom q, Formula d) {
  HilLine l;
  l.kind = HilKind::Ext;
  l.ext_atom = q;
  l.formula = Formula::iff(Formula::var(q), d);
  return add(std::move(l));
}

long ProofBuilder::sub(long line, const Substitution& s) {
  HilLine l;
  l.kind = HilKind::Sub;
  l.p1 = line;
  l.subst = s;
  l.formula = apply_substitution(formula(line), s);
  return add(std::move(l));
}

long ProofBuilder::restate(long line) {
  if (line == last()) return line;
  long id = identity(formula(line));
  HilLine l;
  l.kind = HilKind::Mp;
  l.p1 = id;
  l.p2 = line;
  l.formula = formula(line);
  return add(std::move(l), true);
}

long ProofBuilder::identity(Formula a) {
  Formula aa = imp(a, a);
  if (auto it = proven_.find(aa); it != proven_.end()) return it->second;
  long l1 = ax(1, {a, aa});
  long l2 = ax(2, {a, aa, a});
  long l3 = mp(l2, l1);
  long l4 = ax(1, {a, a});
  return mp(l3, l4);
}

long ProofBuilder::weaken(long b_line, Formula a) {
  Formula b = formula(b_line);
  return mp(ax(1, {b, a}), b_line);
}

long ProofBuilder::trans(long ab, long bc) {
  Formula a = antecedent(formula(ab));
  Formula b = consequent(formula(ab));
  Formula c = consequent(formula(bc));
  if (antecedent(formula(bc)) != b) throw std::logic_error("trans: middle formulas differ");
  Formula goal = imp(a, c);
  if (auto it = proven_.find(goal); it != proven_.end()) return it->second;
  long w = mp(ax(1, {imp(b, c), a}), bc);
  long d = mp(ax(2, {a, b, c}), w);
  return mp(d, ab);
}

long ProofBuilder::lift(long wz, Formula y) {
  Formula w = antecedent(formula(wz));
  Formula z = consequent(formula(wz));
  long yw = mp(ax(1, {formula(wz), y}), wz);
  return mp(ax(2, {y, w, z}), yw);
}

long ProofBuilder::exchange(long abc) {
  Formula a = antecedent(formula(abc));
  Formula bc = consequent(formula(abc));
  Formula b = antecedent(bc);
  Formula c = consequent(bc);
  long d = mp(ax(2, {a, b, c}), abc);  // (a -> b) -> (a -> c)
  return trans(ax(1, {b, a}), d);
}

long ProofBuilder::curry(long and_ab_c) {
  Formula ab = antecedent(formula(and_ab_c));
  if (ab.kind() != Kind::And) throw std::logic_error("curry: antecedent is not a conjunction");
  Formula a = ab.left(), b = ab.right();
  return trans(ax(5, {a, b}), lift(and_ab_c, b));
}

long ProofBuilder::contrapose(long ab) {
  Formula a = antecedent(formula(ab));
  Formula b = consequent(formula(ab));
  long d = mp(ax(9, {a, b}), ab);  // (a -> ~b) -> ~a
  return trans(ax(1, {neg(b), a}), d);
}

long ProofBuilder::lem(Formula a) {
  Formula x = Formula::disj(a, neg(a));
  if (auto it = proven_.find(x); it != proven_.end()) return it->second;
  long na = contrapose(ax(6, {a, neg(a)}));        // ~x -> ~a
  long nna = contrapose(ax(7, {a, neg(a)}));       // ~x -> ~~a
  long nx_a = trans(nna, ax(10, {a}));             // ~x -> a
  long nnx = mp(mp(ax(9, {neg(x), a}), nx_a), na);  // ~~x
  return mp(ax(10, {x}), nnx);
}

long ProofBuilder::and_intro(long a, long b) {
  return mp(mp(ax(5, {formula(a), formula(b)}), a), b);
}

long ProofBuilder::and_elim(long ab, bool left) {
  Formula f = formula(ab);
  if (f.kind() != Kind::And) throw std::logic_error("and_elim: not a conjunction");
  return mp(ax(left ? 3 : 4, {f.left(), f.right()}), ab);
}

long ProofBuilder::case_split(long ac, long bc) {
  Formula a = antecedent(formula(ac));
  Formula b = antecedent(formula(bc));
  Formula c = consequent(formula(ac));
  if (consequent(formula(bc)) != c) throw std::logic_error("case_split: consequents differ");
  return mp(mp(ax(8, {a, b, c}), ac), bc);
}

long ProofBuilder::fold_cases(long line, const std::vector<Formula>& items, Formula goal,
                              const std::function<long(std::size_t)>& lemma) {
  if (formula(line) != disj_list(items)) throw std::logic_error("fold_cases: line does not match its item list");
  if (items.empty()) return mp(ax(12, {goal}), line);
  std::size_t m = items.size();
  long g = lemma(m - 1);
  Formula tail = items[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    long li = lemma(i);
    g = mp(mp(ax(8, {items[i], tail, goal}), li), g);
    tail = Formula::disj(items[i], tail);
  }
  return mp(g, line);
}

namespace {

/// Routes formulas into the disjunction of a fixed item list.
class Router {
public:
  Router(ProofBuilder& pb, const std::vector<Formula>& items) : pb_(pb), items_(items) {
    std::size_t m = items.size();
    tails_.assign(m, Formula::zero());
    for (std::size_t p = m; p-- > 0;) tails_[p] = p + 1 == m ? items[p] : Formula::disj(items[p], tails_[p + 1]);
    for (std::size_t p = 0; p < m; ++p) elem_pos_.emplace(items[p], p);
    for (std::size_t p = m; p-- > 0;) tail_pos_[tails_[p]] = p;
    up_.assign(m, 0);
    inj_.assign(m, 0);
    whole_ = m ? tails_[0] : Formula::zero();
  }

  Formula whole() const { return whole_; }
  bool is_element(Formula x) const { return elem_pos_.count(x) > 0; }

  /// x -> whole for an element x.
  long inject(Formula x) {
    auto it = elem_pos_.find(x);
    if (it == elem_pos_.end()) throw std::logic_error("no route for " + render_formula(x));
    return inject_at(it->second);
  }

  /// Extends a lemma `x -> c` to `x -> whole`.
  long extend(long lemma) {
    Formula c = consequent(pb_.formula(lemma));
    if (c == whole_) return lemma;
    if (auto t = tail_pos_.find(c); t != tail_pos_.end()) return pb_.trans(lemma, up(t->second));
    if (auto e = elem_pos_.find(c); e != elem_pos_.end()) return pb_.trans(lemma, inject_at(e->second));
    // c is a disjunction of routable parts
    std::vector<Formula> parts;
    Formula rest = c;
    while (!routable(rest)) {
      if (rest.kind() != Kind::Or || !routable(rest.left()))
        throw std::logic_error("no route for consequent " + render_formula(c));
      parts.push_back(rest.left());
      rest = rest.right();
    }
    parts.push_back(rest);
    return pb_.trans(lemma, fold_into(parts));
  }

private:
  bool routable(Formula f) const { return f == whole_ || tail_pos_.count(f) || elem_pos_.count(f); }

  long route(Formula f) {
    if (f == whole_) return pb_.identity(whole_);
    if (auto t = tail_pos_.find(f); t != tail_pos_.end()) return up(t->second);
    return inject_at(elem_pos_.at(f));
  }

  /// disj_list(parts) -> whole
  long fold_into(const std::vector<Formula>& parts) {
    std::size_t m = parts.size();
    long g = route(parts[m - 1]);
    Formula tail = parts[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
      g = pb_.mp(pb_.mp(pb_.ax(8, {parts[i], tail, whole_}), route(parts[i])), g);
      tail = Formula::disj(parts[i], tail);
    }
    return g;
  }

  long up(std::size_t p) {
    if (p == 0) return pb_.identity(whole_);
    if (up_[p]) return up_[p];
    long step = pb_.ax(7, {items_[p - 1], tails_[p]});  // tail_p -> tail_{p-1}
    up_[p] = p == 1 ? step : pb_.trans(step, up(p - 1));
    return up_[p];
  }

  long inject_at(std::size_t p) {
    if (inj_[p]) return inj_[p];
    long r;
    if (p + 1 == items_.size()) {
      r = up(p);
    } else {
      long a6 = pb_.ax(6, {items_[p], tails_[p + 1]});
      r = p == 0 ? a6 : pb_.trans(a6, up(p));
    }
    return inj_[p] = r;
  }

  ProofBuilder& pb_;
  std::vector<Formula> items_;
  std::vector<Formula> tails_;
  std::unordered_map<Formula, std::size_t, FormulaHash> elem_pos_, tail_pos_;
  std::vector<long> up_, inj_;
  Formula whole_ = Formula::zero();
};

}  // namespace

long ProofBuilder::restructure(long line, const std::vector<Formula>& from, const std::vector<Formula>& to,
                               const LemmaMap& lemmas) {
  if (to.empty()) throw std::logic_error("restructure: empty target");
  Formula goal = disj_list(to);
  if (formula(line) == goal) return line;
  Router router(*this, to);
  return fold_cases(line, from, goal, [&](std::size_t i) -> long {
    Formula x = from[i];
    if (router.is_element(x)) return router.inject(x);
    auto it = lemmas.find(x);
    if (it == lemmas.end()) throw std::logic_error("restructure: no route for element " + render_formula(x));
    return router.extend(it->second);
  });
}

long ProofBuilder::resolve(long pos_line, const std::vector<Formula>& pos_items, long neg_line,
                           const std::vector<Formula>& neg_items, Formula pivot, const std::vector<Formula>& rest) {
  if (rest.empty()) throw std::logic_error("resolve: empty remainder");
  Formula r = disj_list(rest);
  std::vector<Formula> with_pos{pivot}, with_neg{neg(pivot)};
  with_pos.insert(with_pos.end(), rest.begin(), rest.end());
  with_neg.insert(with_neg.end(), rest.begin(), rest.end());
  long l1 = restructure(pos_line, pos_items, with_pos);
  long l2 = restructure(neg_line, neg_items, with_neg);  // pivot -> r
  long m1 = mp(ax(8, {pivot, r, r}), l2);
  long m2 = mp(m1, identity(r));
  return mp(m2, l1);
}

long ProofBuilder::clause_lemma(const Clause& c) {
  const auto& lits = c.literals();
  if (lits.empty()) return ax(11, Substitution{});
  std::size_t m = lits.size();
  auto base = [&](Literal l) {
    Formula a = Formula::var(l.atom);
    return l.positive ? identity(a) : lem(a);  // [~l, l]
  };
  long line = base(lits[m - 1]);
  Formula head = literal_formula(~lits[m - 1]);
  std::vector<Formula> tail_lits{literal_formula(lits[m - 1])};
  for (std::size_t i = m - 1; i-- > 0;) {
    Formula nl = literal_formula(~lits[i]);
    Formula l = literal_formula(lits[i]);
    Formula new_head = Formula::conj(nl, head);
    std::vector<Formula> target{new_head, l};
    target.insert(target.end(), tail_lits.begin(), tail_lits.end());
    std::vector<Formula> from{head};
    from.insert(from.end(), tail_lits.begin(), tail_lits.end());
    std::vector<Formula> hyp{neg(nl)};
    hyp.insert(hyp.end(), target.begin(), target.end());
    // head -> (nl -> new_head)
    long a5x = exchange(ax(5, {nl, head}));
    long nl_to_target = restructure(line, from, hyp, LemmaMap{{head, a5x}});
    line = restructure(base(lits[i]), {nl, l}, target, LemmaMap{{nl, nl_to_target}});
    head = new_head;
    tail_lits.insert(tail_lits.begin(), l);
  }
  return line;
}

// ---------------------------------------------------------------------------

std::vector<HilLine> expand_macro(ProofBuilder& pb, std::string_view name, const std::vector<long>& inputs,
                                  const Substitution& bindings) {
  auto need = [&](std::size_t n) {
    if (inputs.size() != n)
      throw ArityError("macro '" + std::string(name) + "' takes " + std::to_string(n) + " input lines");
  };
  auto bind = [&](const char* key) -> Formula {
    auto it = bindings.find(Atom(key));
    if (it == bindings.end()) throw ArityError("macro '" + std::string(name) + "' needs binding " + key);
    return it->second;
  };
  std::size_t before = pb.size();
  if (name == "identity") {
    need(0);
    pb.identity(bind("A"));
  } else if (name == "lem") {
    need(0);
    pb.lem(bind("A"));
  } else if (name == "weaken") {
    need(1);
    pb.weaken(inputs[0], bind("A"));
  } else if (name == "trans") {
    need(2);
    pb.trans(inputs[0], inputs[1]);
  } else if (name == "lift") {
    need(1);
    pb.lift(inputs[0], bind("A"));
  } else if (name == "exchange") {
    need(1);
    pb.exchange(inputs[0]);
  } else if (name == "curry") {
    need(1);
    pb.curry(inputs[0]);
  } else if (name == "contrapose") {
    need(1);
    pb.contrapose(inputs[0]);
  } else if (name == "and_intro") {
    need(2);
    pb.and_intro(inputs[0], inputs[1]);
  } else if (name == "and_elim_left" || name == "and_elim_right") {
    need(1);
    pb.and_elim(inputs[0], name == "and_elim_left");
  } else if (name == "case_split") {
    if (inputs.empty()) {
      pb.ax(8, {bind("A"), bind("B"), bind("C")});
    } else {
      need(2);
      pb.case_split(inputs[0], inputs[1]);
    }
  } else if (name == "mp") {
    need(2);
    pb.mp(inputs[0], inputs[1]);
  } else {
    throw UnknownMacroError("unknown macro '" + std::string(name) + "'");
  }
  const auto& lines = pb.proof().lines;
  return std::vector<HilLine>(lines.begin() + static_cast<std::ptrdiff_t>(before), lines.end());
}

// ---------------------------------------------------------------------------

DisjunctionContext::DisjunctionContext(ProofBuilder& pb, std::vector<Formula> leaves, bool abbreviate,
                                       const std::string& prefix)
    : pb_(pb), abbreviate_(abbreviate), prefix_(prefix), leaves_(std::move(leaves)) {
  target_ = disj_balanced(leaves_);
  leaf_node_.assign(leaves_.size(), -1);
  if (leaves_.empty()) {
    nodes_.push_back(TreeNode{0, 0});
    return;
  }
  build(0, leaves_.size(), -1);
  // post-order so that every definition only mentions earlier atoms
  std::vector<int> order;
  std::vector<std::pair<int, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [v, done] = stack.back();
    stack.pop_back();
    if (done || nodes_[v].left < 0) {
      order.push_back(v);
      continue;
    }
    stack.push_back({v, true});
    stack.push_back({nodes_[v].right, false});
    stack.push_back({nodes_[v].left, false});
  }
  int counter = 0;
  for (int v : order) {
    TreeNode& n = nodes_[v];
    if (n.left < 0) {
      n.formula = n.expanded = leaves_[n.lo];
      continue;
    }
    Formula d = Formula::disj(nodes_[n.left].formula, nodes_[n.right].formula);
    n.expanded = Formula::disj(nodes_[n.left].expanded, nodes_[n.right].expanded);
    if (abbreviate_) {
      Atom q(prefix_ + std::to_string(++counter));
      atoms_.push_back(q);
      n.def_line = pb_.ext(q, d);
      n.formula = Formula::var(q);
    } else {
      n.formula = d;
    }
  }
}

int DisjunctionContext::build(std::size_t lo, std::size_t hi, int parent) {
  int v = static_cast<int>(nodes_.size());
  nodes_.push_back(TreeNode{lo, hi});
  nodes_[v].parent = parent;
  if (hi - lo == 1) {
    leaf_node_[lo] = v;
    return v;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  int l = build(lo, mid, v);
  int r = build(mid, hi, v);
  nodes_[v].left = l;
  nodes_[v].right = r;
  return v;
}

long DisjunctionContext::to_parent(int v) {
  const TreeNode& p = nodes_[nodes_[v].parent];
  Formula l = nodes_[p.left].formula, r = nodes_[p.right].formula;
  long step = p.left == v ? pb_.ax(6, {l, r}) : pb_.ax(7, {l, r});
  if (!abbreviate_) return step;
  long bwd = pb_.and_elim(p.def_line, false);  // (l | r) -> q
  return pb_.trans(step, bwd);
}

long DisjunctionContext::to_head(int v) {
  if (v == 0) return pb_.identity(nodes_[0].formula);
  if (nodes_[v].up) return nodes_[v].up;
  long step = to_parent(v);
  long r = nodes_[v].parent == 0 ? step : pb_.trans(step, to_head(nodes_[v].parent));
  return nodes_[v].up = r;
}

long DisjunctionContext::leaf_to_head(std::size_t leaf) { return to_head(leaf_node_.at(leaf)); }

long DisjunctionContext::unfold(long head_line) {
  if (!abbreviate_ || nodes_[0].left < 0) return head_line;
  // down[v]: formula_v -> expanded_v, 0 when they coincide
  std::vector<long> down(nodes_.size(), 0);
  for (std::size_t k = nodes_.size(); k-- > 0;) {
    TreeNode& n = nodes_[k];
    if (n.left < 0) continue;
    const TreeNode& L = nodes_[n.left];
    const TreeNode& R = nodes_[n.right];
    long lx = pb_.ax(6, {L.expanded, R.expanded});
    if (down[n.left]) lx = pb_.trans(down[n.left], lx);
    long rx = pb_.ax(7, {L.expanded, R.expanded});
    if (down[n.right]) rx = pb_.trans(down[n.right], rx);
    long fwd = pb_.and_elim(n.def_line, true);  // q -> (l | r)
    down[k] = pb_.trans(fwd, pb_.case_split(lx, rx));
  }
  return pb_.mp(down[0], head_line);
}

}  // namespace pcw
