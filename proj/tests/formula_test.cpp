#include <random>

#include "doctest.h"
#include "pcw/cnf.hpp"
#include "pcw/formula.hpp"
#include "support.hpp"

using namespace pcw;

namespace {
Formula P(const char* s) { return parse_formula(s); }
Formula V(const char* s) { return Formula::var(s); }
}  // namespace

TEST_CASE("parse_formula builds the normalized binary tree") {
  CHECK(P("(or p (not q))") == Formula::disj(V("p"), Formula::negation(V("q"))));
  CHECK(P("(and a b c)") == Formula::conj(V("a"), Formula::conj(V("b"), V("c"))));
  CHECK(P("(imp a b)") == P("(or (not a) b)"));
  CHECK(P("(iff a b)") == P("(and (or (not a) b) (or (not b) a))"));
  CHECK(P("  1 ") == Formula::one());
}

TEST_CASE("parse_formula reports errors with offsets") {
  try {
    P("(or p");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 5);
  }
  CHECK_THROWS_AS(P("(xor p q)"), ParseError);
  CHECK_THROWS_AS(P("(and p)"), ParseError);
  CHECK_THROWS_AS(P("(not p q)"), ParseError);
  CHECK_THROWS_AS(P("p q"), ParseError);
  CHECK_THROWS_AS(P("Pq"), ParseError);
  CHECK_THROWS_AS(P("e_q"), ReservedNameError);
  CHECK(parse_formula("e_q", ParseOptions{.allow_reserved = true}) == V("e_q"));
  CHECK(parse_formula("(imp P Q)", ParseOptions{.allow_patterns = true}) == Formula::imp(V("P"), V("Q")));
}

TEST_CASE("render_formula emits canonical binary s-expressions") {
  CHECK(render_formula(Formula::disj(V("p"), Formula::negation(V("q")))) == "(or p (not q))");
  CHECK(render_formula(P("(and a b c)")) == "(and a (and b c))");
  CHECK(render_formula(Formula::one()) == "1");
}

TEST_CASE("evaluate") {
  CHECK_FALSE(evaluate(P("(or p (not q))"), make_assignment({{"p", false}, {"q", true}})));
  CHECK(evaluate(P("(or p (not p))"), make_assignment({{"p", false}})));
  CHECK_FALSE(evaluate(Formula::zero(), {}));
  CHECK_THROWS_AS(evaluate(P("(or p q)"), make_assignment({{"p", true}})), MissingAtomError);
}

TEST_CASE("brute_force_classify") {
  CHECK(brute_force_classify(P("(or p (not p))")) == Classification::Tautology);
  CHECK(brute_force_classify(Formula::zero()) == Classification::Unsatisfiable);
  CHECK(brute_force_classify(P("(and p q)")) == Classification::SatisfiableNotTautology);
  std::vector<Formula> many;
  for (int i = 0; i < 25; ++i) many.push_back(Formula::var("a" + std::to_string(i)));
  CHECK_THROWS_AS(brute_force_classify(disj_list(many)), TooManyAtomsError);
  CHECK(brute_force_classify(disj_list(many), 25) == Classification::SatisfiableNotTautology);
}

TEST_CASE("apply_substitution is simultaneous") {
  Substitution s{{Atom("p"), P("(and q r)")}};
  CHECK(apply_substitution(P("(or p (not p))"), s) == P("(or (and q r) (not (and q r)))"));
  CHECK(apply_substitution(P("(and p q)"), {}) == P("(and p q)"));
  Substitution swap{{Atom("p"), V("q")}, {Atom("q"), V("p")}};
  CHECK(apply_substitution(P("(and p q)"), swap) == P("(and q p)"));
}

TEST_CASE("match_scheme") {
  ParseOptions pat{.allow_patterns = true};
  Formula a1 = parse_formula("(imp P (imp Q P))", pat);
  auto m = match_scheme(a1, P("(imp p (imp q p))"));
  REQUIRE(m);
  CHECK(m->size() == 2);
  CHECK(m->at(Atom("P")) == V("p"));
  CHECK(m->at(Atom("Q")) == V("q"));
  CHECK_FALSE(match_scheme(a1, P("(imp p (imp q r))")));
  Formula a3 = parse_formula("(imp (and P Q) P)", pat);
  auto m3 = match_scheme(a3, P("(imp (and (or a b) c) (or a b))"));
  REQUIRE(m3);
  CHECK(m3->at(Atom("P")) == P("(or a b)"));
  CHECK(m3->at(Atom("Q")) == V("c"));
}

TEST_CASE("property: render/parse round trip on random formulas") {
  std::mt19937 rng(7);
  std::vector<std::string> atoms{"p", "q", "r", "s1", "t_2"};
  for (int i = 0; i < 400; ++i) {
    Formula f = testing::random_formula(rng, 1 + i % 12, atoms);
    CHECK(parse_formula(render_formula(f)) == f);
  }
}

TEST_CASE("property: substitution composition") {
  std::mt19937 rng(11);
  std::vector<std::string> base{"p", "q", "r"};
  std::vector<std::string> mid{"u", "v"};
  std::vector<std::string> top{"x", "y"};
  for (int i = 0; i < 200; ++i) {
    Formula f = testing::random_formula(rng, 5, base);
    Substitution s1, s2, composed;
    for (auto& a : base) s1[Atom(a)] = testing::random_formula(rng, 3, mid);
    for (auto& a : mid) s2[Atom(a)] = testing::random_formula(rng, 3, top);
    for (auto& [a, g] : s1) composed[a] = apply_substitution(g, s2);
    CHECK(apply_substitution(apply_substitution(f, s1), s2) == apply_substitution(f, composed));
  }
}

TEST_CASE("property: match/apply adjunction") {
  std::mt19937 rng(5);
  std::vector<std::string> pvars{"P", "Q", "R"};
  std::vector<std::string> atoms{"a", "b"};
  for (int i = 0; i < 300; ++i) {
    Formula pat = testing::random_formula(rng, 4, pvars);
    Substitution s;
    for (auto& v : pvars) s[Atom(v)] = testing::random_formula(rng, 3, atoms);
    Formula f = apply_substitution(pat, s);
    auto m = match_scheme(pat, f);
    REQUIRE(m);
    CHECK(apply_substitution(pat, *m) == f);
    // A random unrelated formula either fails to match or matches exactly.
    Formula g = testing::random_formula(rng, 5, atoms);
    if (auto m2 = match_scheme(pat, g)) CHECK(apply_substitution(pat, *m2) == g);
  }
}

TEST_CASE("property: classifier agrees with an independent recursive evaluator") {
  std::mt19937 rng(3);
  std::vector<std::string> atoms{"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int i = 0; i < 300; ++i) {
    Formula f = testing::random_formula(rng, 2 + i % 7, atoms);
    CHECK(brute_force_classify(f) == testing::naive_classify(f));
  }
}

TEST_CASE("DNF negation of a CNF and its inverse") {
  CnfFormula cnf = CnfFormula::from_clauses({Clause{pos("p"), neg("q")}, Clause{neg("p")}, Clause{}});
  Formula d = dnf_negation(cnf);
  CHECK(render_formula(d) == "(or (and (not p) q) (or p 1))");
  auto back = cnf_from_dnf(d);
  REQUIRE(back);
  CHECK(back->clauses == cnf.clauses);
  CHECK_FALSE(cnf_from_dnf(P("(or p (and q (or r s)))")));
  CHECK(cnf_from_dnf(Formula::zero())->clauses.empty());
}

TEST_CASE("DIMACS round trip keeps atom names") {
  CnfFormula cnf = CnfFormula::from_clauses({Clause{pos("p_1_1"), neg("q")}, Clause{neg("p_1_1")}});
  std::string text = write_dimacs(cnf);
  CHECK(text.rfind("c atoms: p_1_1 q\np cnf 2 2\n", 0) == 0);
  CnfFormula back = parse_dimacs(text);
  CHECK(back.atoms == cnf.atoms);
  CHECK(back.clauses == cnf.clauses);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
  CHECK(parse_dimacs("p cnf 2 1\n1 -2 0\n").atoms[1].name() == "x2");
}
