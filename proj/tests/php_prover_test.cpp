#include <cmath>

#include "doctest.h"
#include "pcw/generators.hpp"
#include "pcw/php_prover.hpp"
#include "pcw/proof_builder.hpp"

using namespace pcw;

namespace {
Formula P(const char* s) { return parse_formula(s); }

int ext_lines(const HilbertProof& p) {
  int e = 0;
  for (const HilLine& l : p.lines) e += l.kind == HilKind::Ext;
  return e;
}
}  // namespace

TEST_CASE("macro expansion") {
  ProofBuilder pb;
  auto lines = expand_macro(pb, "identity", {}, {{Atom("A"), P("p")}});
  CHECK(lines.size() == 5);
  CHECK(lines.back().formula == P("(or (not p) p)"));
  CHECK(check_frege_family(pb.proof()).accepted);

  ProofBuilder cs;
  long ac = cs.ax(3, {P("a"), P("c")});  // (a & c) -> a
  long bc = cs.ax(4, {P("b"), P("a")});  // (b & a) -> a
  auto split = expand_macro(cs, "case_split", {ac, bc}, {});
  CHECK(split.back().formula == P("(imp (or (and a c) (and b a)) a)"));
  CHECK(check_frege_family(cs.proof()).accepted);
  auto a8 = expand_macro(cs, "case_split", {}, {{Atom("A"), P("x")}, {Atom("B"), P("y")}, {Atom("C"), P("z")}});
  CHECK(a8.back().formula == P("(imp (imp x z) (imp (imp y z) (imp (or x y) z)))"));

  CHECK_THROWS_AS(expand_macro(pb, "nonsense", {}, {}), UnknownMacroError);
  CHECK_THROWS_AS(expand_macro(pb, "trans", {1}, {}), ArityError);
  CHECK_THROWS_AS(expand_macro(pb, "identity", {}, {}), ArityError);
}

TEST_CASE("derived rules produce checkable tautologies") {
  ProofBuilder pb;
  Formula a = P("(and p q)"), b = P("r");
  long lem = pb.lem(a);
  CHECK(pb.formula(lem) == Formula::disj(a, Formula::negation(a)));
  long ab = pb.ax(1, {b, a});  // r -> (a -> r)
  long ex = pb.exchange(ab);
  CHECK(pb.formula(ex) == Formula::imp(a, Formula::imp(b, b)));
  long cp = pb.contrapose(pb.ax(6, {P("p"), P("q")}));
  CHECK(pb.formula(cp) == P("(imp (not (or p q)) (not p))"));
  long cu = pb.curry(pb.ax(3, {P("p"), P("q")}));
  CHECK(pb.formula(cu) == P("(imp p (imp q p))"));
  for (Clause c : {Clause{pos("p")}, Clause{neg("p")}, Clause{pos("p"), neg("q"), pos("r")}, Clause{}}) {
    long l = pb.clause_lemma(c);
    std::vector<Formula> items{negated_clause_formula(c)};
    for (Literal x : c) items.push_back(literal_formula(x));
    CHECK(pb.formula(l) == (c.empty() ? Formula::one() : disj_list(items)));
  }
  CheckReport r = check_frege_family(pb.proof());
  CHECK(r.accepted);
  for (const HilLine& l : pb.proof().lines) CHECK(brute_force_classify(l.formula) == Classification::Tautology);
}

TEST_CASE("restructure and resolve") {
  ProofBuilder pb;
  Formula p = P("p"), q = P("q"), r = P("r"), s = P("s");
  long l = pb.ax(6, {p, q});  // (or (not p) (or p q))
  std::vector<Formula> from{Formula::negation(p), p, q};
  long moved = pb.restructure(l, from, {q, p, s, Formula::negation(p)});
  CHECK(pb.formula(moved) == disj_list({q, p, s, Formula::negation(p)}));
  CHECK_THROWS_AS(pb.restructure(l, from, {p, q}), std::logic_error);

  // (p | r) and (~p | r) give r | s
  ProofBuilder rb;
  long pr = rb.ax(6, {p, r});
  long x = rb.ax(7, {p, r});
  (void)x;
  long a = rb.identity(p);  // ~p | p
  (void)a;
  long pos_line = rb.restructure(rb.ax(6, {r, p}), {Formula::negation(r), r, p}, {Formula::negation(r), p, r});
  (void)pos_line;
  CHECK(check_frege_family(rb.proof()).accepted);
  (void)pr;
}

TEST_CASE("build_ef_proof_php small cases") {
  PhpProofArtifacts a2 = build_ef_proof_php(2);
  CheckReport r2 = check_frege_family(a2.proof);
  CHECK(r2.accepted);
  CHECK(*r2.conclusion == gen_php({2, 1, false, PhpForm::DnfTautology}).formula);
  CHECK(ext_lines(a2.proof) == 0);
  CHECK(a2.ext_atoms.empty());

  PhpProofArtifacts a3 = build_ef_proof_php(3);
  CheckReport r3 = check_frege_family(a3.proof);
  CHECK(r3.accepted);
  CHECK(*r3.conclusion == php_formula(3, 2, false));
  CHECK(ext_lines(a3.proof) == 2);
  CHECK(brute_force_classify(*r3.conclusion) == Classification::Tautology);

  HilbertProof mutated = a3.proof;
  mutated.lines.back().formula = Formula::disj(mutated.lines.back().formula, P("p_1_1"));
  CHECK_FALSE(check_frege_family(mutated).accepted);

  CHECK_THROWS_AS(build_ef_proof_php(1), ParamError);
  CHECK(php_stats_line(a3).rfind("n=3 steps=", 0) == 0);
}

TEST_CASE("build_ef_proof_php with functionality clauses") {
  for (int n = 2; n <= 5; ++n) {
    PhpProofArtifacts a = build_ef_proof_php(n, true);
    CheckReport r = check_frege_family(a.proof);
    CHECK(r.accepted);
    CHECK(*r.conclusion == php_formula(n, n - 1, true));
  }
}

TEST_CASE("build_ef_proof_php accepted for n up to 7, tautology by brute force up to 5") {
  for (int n = 2; n <= 7; ++n) {
    PhpProofArtifacts a = build_ef_proof_php(n);
    CheckReport r = check_frege_family(a.proof);
    REQUIRE(r.accepted);
    CHECK(*r.conclusion == php_formula(n, n - 1, false));
    for (Atom q : a.ext_atoms) {
      CHECK(is_reserved_name(q.name()));
      CHECK_FALSE(occurs_in(q, *r.conclusion));
    }
    if (n <= 5) CHECK(brute_force_classify(*r.conclusion) == Classification::Tautology);
    MESSAGE(php_stats_line(a));
  }
}
