#include <random>

#include "doctest.h"
#include "pcw/calculi.hpp"
#include "pcw/generators.hpp"
#include "support.hpp"

using namespace pcw;

namespace {

Formula P(const char* s) { return parse_formula(s, ParseOptions{.allow_reserved = true}); }

Clause C(std::initializer_list<Literal> l) { return Clause(l); }

HilLine ax(long id, int k, Substitution s) {
  HilLine l;
  l.id = id;
  l.kind = HilKind::Ax;
  l.scheme = k;
  l.subst = std::move(s);
  l.formula = apply_substitution(frege_scheme(k), l.subst);
  return l;
}

HilLine mp(long id, const HilbertProof& pf, long i, long j) {
  HilLine l;
  l.id = id;
  l.kind = HilKind::Mp;
  l.p1 = i;
  l.p2 = j;
  for (auto& x : pf.lines)
    if (x.id == i) l.formula = x.formula.right();
  return l;
}

HilLine ext(long id, const char* q, Formula d) {
  HilLine l;
  l.id = id;
  l.kind = HilKind::Ext;
  l.ext_atom = Atom(q);
  l.formula = Formula::iff(Formula::var(q), d);
  return l;
}

Substitution S(std::initializer_list<std::pair<const char*, Formula>> kv) {
  Substitution s;
  for (auto& [k, v] : kv) s[Atom(k)] = v;
  return s;
}

/// p -> p in five lines.
HilbertProof identity_proof(Formula p, FregeVariant v = FregeVariant::F) {
  HilbertProof pf;
  pf.variant = v;
  Formula pp = Formula::imp(p, p);
  pf.lines.push_back(ax(1, 1, S({{"P", p}, {"Q", pp}})));
  pf.lines.push_back(ax(2, 2, S({{"P", p}, {"Q", pp}, {"R", p}})));
  pf.lines.push_back(mp(3, pf, 2, 1));
  pf.lines.push_back(ax(4, 1, S({{"P", p}, {"Q", p}})));
  pf.lines.push_back(mp(5, pf, 3, 4));
  return pf;
}

CnfFormula php2() { return php_cnf(2, 1, false); }

ResolutionProof php2_refutation() {
  ResolutionProof pf;
  pf.lines.push_back(ResLine::input(1, 1, C({pos("p_1_1")})));
  pf.lines.push_back(ResLine::input(2, 2, C({pos("p_2_1")})));
  pf.lines.push_back(ResLine::input(3, 3, C({neg("p_1_1"), neg("p_2_1")})));
  pf.lines.push_back(ResLine::resolve(4, 1, 3, Atom("p_1_1"), C({neg("p_2_1")})));
  pf.lines.push_back(ResLine::resolve(5, 2, 4, Atom("p_2_1"), Clause{}));
  return pf;
}

CnfFormula ext_cnf() { return CnfFormula::from_clauses({C({pos("p"), pos("r")}), C({neg("p")}), C({neg("r")})}); }

ResolutionProof ext_refutation() {
  Atom q("e_q");
  ResolutionProof pf;
  pf.lines.push_back(ResLine::input(1, 1, C({pos("p"), pos("r")})));
  pf.lines.push_back(ResLine::input(2, 2, C({neg("p")})));
  pf.lines.push_back(ResLine::input(3, 3, C({neg("r")})));
  pf.lines.push_back(ResLine::extend_def(4, q, pos("p"), pos("r")));
  auto defs = extension_clauses(q, pos("p"), pos("r"));
  for (int k = 0; k < 3; ++k) pf.lines.push_back(ResLine::extend_clause(5 + k, 4, k, defs[k]));
  pf.lines.push_back(ResLine::resolve(8, 1, 6, Atom("p"), C({pos("r"), pos("e_q")})));
  pf.lines.push_back(ResLine::resolve(9, 8, 3, Atom("r"), C({pos("e_q")})));
  pf.lines.push_back(ResLine::resolve(10, 9, 5, q, C({pos("p"), pos("r")})));
  pf.lines.push_back(ResLine::resolve(11, 10, 2, Atom("p"), C({pos("r")})));
  pf.lines.push_back(ResLine::resolve(12, 11, 3, Atom("r"), Clause{}));
  return pf;
}

}  // namespace

TEST_CASE("check_resolution examples") {
  CnfFormula c = CnfFormula::from_clauses({C({pos("p")}), C({neg("p")})});
  ResolutionProof pf;
  pf.lines = {ResLine::input(1, 1, C({pos("p")})), ResLine::input(2, 2, C({neg("p")})),
              ResLine::resolve(3, 1, 2, Atom("p"), Clause{})};
  CheckReport r = check_resolution(c, pf);
  CHECK(r.accepted);
  CHECK(r.steps == 3);
  CHECK(r.empty_clause);

  CHECK_FALSE(brute_force_satisfiable(php2()));
  CheckReport r2 = check_resolution(php2(), php2_refutation());
  CHECK(r2.accepted);
  CHECK(*r2.conclusion == php_formula(2, 1, false));

  ResolutionProof bad = php2_refutation();
  bad.lines[3].pivot = Atom("q");
  CheckReport r3 = check_resolution(php2(), bad);
  CHECK_FALSE(r3.accepted);
  CHECK(r3.line_id == 4);
  CHECK(r3.reason == RejectReason::BadPivot);
}

TEST_CASE("check_resolution rejections") {
  ResolutionProof pf = php2_refutation();
  pf.lines.pop_back();
  CHECK(check_resolution(php2(), pf).reason == RejectReason::NotEmptyFinal);

  pf = php2_refutation();
  pf.lines[4].p1 = 9;
  CHECK(check_resolution(php2(), pf).reason == RejectReason::UnknownId);

  pf = php2_refutation();
  std::swap(pf.lines[3].p1, pf.lines[3].p2);
  CHECK(check_resolution(php2(), pf).reason == RejectReason::BadPivot);

  pf = php2_refutation();
  pf.lines[3].clause = C({pos("p_2_1")});
  CHECK(check_resolution(php2(), pf).reason == RejectReason::BadResolvent);

  pf = php2_refutation();
  pf.lines[0].input_index = 2;
  CHECK(check_resolution(php2(), pf).reason == RejectReason::BadInput);

  pf = php2_refutation();
  pf.lines[2].id = 2;
  CHECK(check_resolution(php2(), pf).reason == RejectReason::BadId);

  CHECK(check_resolution(php2(), ResolutionProof{}).reason == RejectReason::EmptyProof);
  CHECK(check_resolution(ext_cnf(), ext_refutation()).reason == RejectReason::ExtendForbidden);
}

TEST_CASE("tree-like resolution forbids reuse") {
  CHECK(check_resolution(php2(), php2_refutation(), true).accepted);
  // {p,q} {~p,q} {p,~q} {~p,~q}: the dag proof reuses nothing here but a reused line is caught.
  CnfFormula c = CnfFormula::from_clauses({C({pos("p")}), C({neg("p"), pos("q")}), C({neg("p"), neg("q")})});
  ResolutionProof pf;
  pf.lines = {ResLine::input(1, 1, C({pos("p")})),
              ResLine::input(2, 2, C({neg("p"), pos("q")})),
              ResLine::input(3, 3, C({neg("p"), neg("q")})),
              ResLine::resolve(4, 1, 2, Atom("p"), C({pos("q")})),
              ResLine::resolve(5, 4, 3, Atom("q"), C({neg("p")})),
              ResLine::resolve(6, 1, 5, Atom("p"), Clause{})};
  CHECK(check_resolution(c, pf).accepted);
  CheckReport t = check_resolution(c, pf, true);
  CHECK(t.reason == RejectReason::ReuseInTree);
  CHECK(t.line_id == 6);
}

TEST_CASE("check_extended_resolution") {
  CHECK_FALSE(brute_force_satisfiable(ext_cnf()));
  CheckReport r = check_extended_resolution(ext_cnf(), ext_refutation());
  CHECK(r.accepted);
  CHECK(r.symbols == 3 + 2 + 2 + 4 + 4 + 3 + 3 + 3 + 2 + 3 + 2 + 1);

  ResolutionProof pf = ext_refutation();
  pf.lines[3].ext_atom = Atom("p");
  CHECK(check_extended_resolution(ext_cnf(), pf).reason == RejectReason::ExtNotFresh);

  pf = ext_refutation();
  std::swap(pf.lines[4].clause, pf.lines[5].clause);
  CHECK(check_extended_resolution(ext_cnf(), pf).reason == RejectReason::BadExtend);

  pf = ext_refutation();
  pf.lines.erase(pf.lines.begin() + 6);
  CHECK(check_extended_resolution(ext_cnf(), pf).reason == RejectReason::BadExtend);

  // Conservativity: a proof without extensions gets the same verdict.
  CheckReport a = check_resolution(php2(), php2_refutation());
  CheckReport b = check_extended_resolution(php2(), php2_refutation());
  CHECK(a.accepted == b.accepted);
  CHECK(a.steps == b.steps);
  CHECK(a.symbols == b.symbols);
}

TEST_CASE("resolution text format") {
  const char* text =
      "system RES\n"
      "cnf -\n"
      "begin cnf\n"
      "c atoms: p_1_1 p_2_1\n"
      "p cnf 2 3\n1 0\n2 0\n-1 -2 0\n"
      "end cnf\n"
      "1 1 0 i1 0\n"
      "2 2 0 i2 0\n"
      "3 -1 -2 0 i3 0\n"
      "4 -2 0 1 3 0\n"
      "5 0 2 4 0\n";
  ResolutionDocument doc = parse_resolution(text);
  CHECK(doc.system == ResSystem::Res);
  REQUIRE(doc.proof.lines.size() == 5);
  CHECK(doc.proof.lines[3].pivot == Atom("p_1_1"));
  CHECK(check_resolution(doc.cnf, doc.proof).accepted);
  CHECK(as_function(Calculus::Res, text) == php_formula(2, 1, false));

  ResolutionDocument er{ResSystem::ER, "-", ext_cnf(), ext_refutation()};
  std::string w = write_resolution(er);
  CHECK(w.find("c atom 3 e_q\n4 e 3 1 2\n") != std::string::npos);
  ResolutionDocument back = parse_resolution(w);
  CHECK(check_extended_resolution(back.cnf, back.proof).accepted);
  CHECK(write_resolution(back) == w);
  CHECK(as_function(Calculus::ER, w) == dnf_negation(ext_cnf()));
  CHECK(as_function(Calculus::Res, w) == Formula::one());

  CHECK_THROWS_AS(parse_resolution("system RES\ncnf -\nbegin cnf\np cnf 1 1\n1 0\nend cnf\n1 2 0 i1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_resolution("system XX\n"), ParseError);
}

TEST_CASE("Frege schemes are tautologies") {
  for (int k = 1; k <= kSchemeCount; ++k) CHECK(brute_force_classify(frege_scheme(k)) == Classification::Tautology);
  CHECK_THROWS(frege_scheme(13));
}

TEST_CASE("check_frege_family examples") {
  HilbertProof one;
  one.lines.push_back(ax(1, 1, S({{"P", P("p")}, {"Q", P("q")}})));
  CHECK(one.lines[0].formula == P("(or (not p) (or (not q) p))"));
  CheckReport r = check_frege_family(one);
  CHECK(r.accepted);
  CHECK(*r.conclusion == P("(or (not p) (or (not q) p))"));

  HilbertProof bad = one;
  bad.lines.push_back(ax(2, 11, {}));
  HilLine m;
  m.id = 3;
  m.kind = HilKind::Mp;
  m.p1 = 2;
  m.p2 = 1;
  m.formula = P("q");
  bad.lines.push_back(m);
  CheckReport rb = check_frege_family(bad);
  CHECK(rb.reason == RejectReason::BadMp);
  CHECK(rb.line_id == 3);

  CheckReport id = check_frege_family(identity_proof(P("p")));
  CHECK(id.accepted);
  CHECK(*id.conclusion == P("(imp p p)"));
  CHECK(id.steps == 5);

  HilbertProof wrong = one;
  wrong.lines[0].subst[Atom("Q")] = P("r");
  CHECK(check_frege_family(wrong).reason == RejectReason::BadAxiomInstance);
  wrong = one;
  wrong.lines[0].subst[Atom("R")] = P("r");
  CHECK(check_frege_family(wrong).reason == RejectReason::BadAxiomInstance);
  wrong = one;
  wrong.lines[0].scheme = 13;
  CHECK(check_frege_family(wrong).reason == RejectReason::UnknownScheme);
  CHECK(check_frege_family(HilbertProof{}).reason == RejectReason::EmptyProof);
}

TEST_CASE("extension and substitution rules") {
  // EF: q == (and a b), then q -> q, which mentions q in the conclusion.
  HilbertProof ef;
  ef.variant = FregeVariant::EF;
  ef.lines.push_back(ext(1, "e_q", P("(and a b)")));
  ef.lines.push_back(ax(2, 11, {}));
  CHECK(check_frege_family(ef).accepted);
  HilbertProof f = ef;
  f.variant = FregeVariant::F;
  CHECK(check_frege_family(f).reason == RejectReason::ExtForbidden);

  HilbertProof inconc = ef;
  inconc.lines.push_back(ax(3, 1, S({{"P", P("e_q")}, {"Q", P("a")}})));
  CHECK(check_frege_family(inconc).reason == RejectReason::ExtInConclusion);

  HilbertProof stale = ef;
  stale.lines[1] = ax(2, 1, S({{"P", P("e_r")}, {"Q", P("a")}}));
  stale.lines.push_back(ext(3, "e_r", P("b")));
  stale.lines.push_back(ax(4, 11, {}));
  CHECK(check_frege_family(stale).reason == RejectReason::ExtNotFresh);

  HilbertProof self;
  self.variant = FregeVariant::EF;
  self.lines.push_back(ext(1, "e_q", P("(or e_q a)")));
  self.lines.push_back(ax(2, 11, {}));
  CHECK(check_frege_family(self).reason == RejectReason::ExtNotFresh);

  HilbertProof form = ef;
  form.lines[0].formula = P("(and (or (not e_q) a) (or (not b) e_q))");
  CHECK(check_frege_family(form).reason == RejectReason::BadExtForm);

  HilbertProof sf = identity_proof(P("p"), FregeVariant::SF);
  HilLine sub;
  sub.id = 6;
  sub.kind = HilKind::Sub;
  sub.p1 = 5;
  sub.subst = S({{"p", P("(and x y)")}});
  sub.formula = P("(imp (and x y) (and x y))");
  sf.lines.push_back(sub);
  CHECK(check_frege_family(sf).accepted);
  HilbertProof sfbad = sf;
  sfbad.lines.back().subst[Atom("p")] = P("(not (and x y))");
  CHECK(check_frege_family(sfbad).reason == RejectReason::BadSub);
  sf.variant = FregeVariant::EF;
  CHECK(check_frege_family(sf).reason == RejectReason::SubForbidden);
}

TEST_CASE("Hilbert text format") {
  HilbertProof pf = identity_proof(P("(or a b)"));
  std::string text = write_hilbert(pf);
  CHECK(text.rfind("system F\n1 | (or (not (or a b)) (or (not (or (not (or a b)) (or a b))) (or a b))) | AX A1 {P=", 0) == 0);
  HilbertProof back = parse_hilbert(text);
  CHECK(write_hilbert(back) == text);
  CHECK(as_function(Calculus::F, text) == P("(imp (or a b) (or a b))"));
  CHECK(as_function(Calculus::EF, text) == Formula::one());

  // atom values directly before `;` and `}`
  HilbertProof atoms = identity_proof(P("a"));
  std::string at = write_hilbert(atoms);
  CHECK(at.find("{P=a; Q=") != std::string::npos);
  CHECK(write_hilbert(parse_hilbert(at)) == at);
  CHECK(as_function(Calculus::F, at) == P("(imp a a)"));

  HilbertProof u = parse_hilbert("system F\n1 | 1 | AX A99 {}\n");
  CHECK(check_frege_family(u).reason == RejectReason::UnknownScheme);
  CHECK_THROWS_AS(parse_hilbert("system F\n1 | (or p | MP 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_hilbert("system F\n1 | p | FOO\n"), ParseError);
  CHECK_THROWS_AS(parse_hilbert("system G\n"), ParseError);
  HilbertProof e = parse_hilbert("system EF\n1 | (iff e_q (and a b)) | EXT e_q\n2 | 1 | AX A11 {}\n");
  CHECK(check_frege_family(e).accepted);
}

TEST_CASE("as_function is total") {
  CHECK(as_function(Calculus::EF, "") == Formula::one());
  CHECK(as_function(Calculus::Res, "") == Formula::one());
  CHECK(as_function(Calculus::F, "\xff\xfe garbage | | |") == Formula::one());
  std::mt19937 rng(99);
  std::string valid = write_hilbert(identity_proof(P("p")));
  for (int i = 0; i < 2000; ++i) {
    std::string w = valid;
    int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits && !w.empty(); ++e) w[rng() % w.size()] = static_cast<char>(rng() % 256);
    Formula f = as_function(Calculus::F, w);
    CHECK(brute_force_classify(f) == Classification::Tautology);
  }
  std::string rtext = write_resolution({ResSystem::ER, "-", ext_cnf(), ext_refutation()});
  for (int i = 0; i < 2000; ++i) {
    std::string w = rtext;
    w[rng() % w.size()] = "0123456789- \nie"[rng() % 15];
    CHECK(brute_force_classify(as_function(Calculus::ER, w)) == Classification::Tautology);
  }
}

TEST_CASE("property: random Hilbert derivations are sound") {
  std::mt19937 rng(41);
  std::vector<std::string> atoms{"a", "b", "c"};
  int accepted_mp = 0;
  for (int trial = 0; trial < 60; ++trial) {
    HilbertProof pf;
    long id = 0;
    for (int step = 0; step < 40; ++step) {
      if (!pf.lines.empty() && rng() % 3 == 0) {
        // weaken an earlier line b to Q -> b via A1 and MP
        Formula b = pf.lines[rng() % pf.lines.size()].formula;
        long bid = 0;
        for (const HilLine& l : pf.lines)
          if (l.formula == b) bid = l.id;
        pf.lines.push_back(ax(++id, 1, S({{"P", b}, {"Q", testing::random_formula(rng, 2, atoms)}})));
        pf.lines.push_back(mp(id + 1, pf, id, bid));
        ++id;
        ++accepted_mp;
        continue;
      }
      if (pf.lines.size() >= 2 && rng() % 2) {
        bool done = false;
        for (const HilLine& a : pf.lines) {
          for (const HilLine& b : pf.lines)
            if (a.formula.kind() == Kind::Or && a.formula.left() == Formula::negation(b.formula)) {
              pf.lines.push_back(mp(++id, pf, a.id, b.id));
              done = true;
              break;
            }
          if (done) break;
        }
        if (done) continue;
      }
      Substitution s;
      for (const char* v : {"P", "Q", "R"}) s[Atom(v)] = testing::random_formula(rng, 2, atoms);
      int k = 1 + static_cast<int>(rng() % kSchemeCount);
      Substitution used;
      for (auto& [key, val] : s)
        if (occurs_in(key, frege_scheme(k))) used[key] = val;
      pf.lines.push_back(ax(++id, k, used));
    }
    CheckReport r = check_frege_family(pf);
    REQUIRE(r.accepted);
    for (const HilLine& l : pf.lines) CHECK(brute_force_classify(l.formula) == Classification::Tautology);
  }
  CHECK(accepted_mp > 0);
}
