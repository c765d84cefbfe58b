#include <random>

#include "doctest.h"
#include "pcw/algebraic.hpp"
#include "pcw/generators.hpp"
#include "support.hpp"

using namespace pcw;

namespace {

Polynomial term(std::int64_t c, std::initializer_list<const char*> atoms) {
  Polynomial p;
  Monomial m;
  for (const char* a : atoms) m.push_back(Atom(a));
  p.add_term(m, c);
  return p;
}

// direct product over the clause, no normal form involved
std::int64_t product_value(const Clause& c, const Assignment& a) {
  std::int64_t v = 1;
  for (Literal l : c) {
    std::int64_t x = a.at(l.atom.id()) ? 1 : 0;
    v *= l.positive ? 1 - x : x;
  }
  return v;
}

std::vector<CnfFormula> equivalence_corpus() {
  std::vector<CnfFormula> out;
  std::mt19937 rng(2024);
  for (int i = 0; i < 200; ++i) out.push_back(testing::random_cnf(rng, 10, 20, 4));
  for (int m = 2; m <= 4; ++m)
    for (int h = 1; h <= 4; ++h)
      for (bool f : {false, true}) out.push_back(php_cnf(m, h, f));
  return out;
}

}  // namespace

TEST_CASE("clause polynomial example") {
  CnfFormula cnf = CnfFormula::from_clauses({Clause{pos("p"), neg("q"), pos("r")}});
  auto s = encode_poly_system(cnf);
  REQUIRE(s.equations.size() == 4);
  Polynomial expect = term(1, {"q"}) + term(-1, {"p", "q"}) + term(-1, {"q", "r"}) + term(1, {"p", "q", "r"});
  CHECK(s.equations[0].poly == expect);
  CHECK(!s.equations[0].reduced);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(s.equations[i].reduced == cnf.atoms[i - 1]);
    CHECK(s.equations[i].poly.is_zero());
  }
  CHECK(write_poly_system(s) ==
        "-1*p*q + 1*p*q*r + 1*q + -1*q*r = 0\n"
        "1*p*p + -1*p = 0 reduced\n"
        "1*q*q + -1*q = 0 reduced\n"
        "1*r*r + -1*r = 0 reduced\n");
}

TEST_CASE("polynomial arithmetic is multilinear") {
  Polynomial x = Polynomial::var(Atom("x")), y = Polynomial::var(Atom("y"));
  CHECK((x * x) == x);
  CHECK((x * x - x).is_zero());
  CHECK(((x + y) * (x + y)) == (x + y + term(2, {"x", "y"})));
  CHECK((Polynomial::constant(3) - Polynomial::constant(3)).is_zero());
  CHECK(Polynomial().to_string() == "0");
}

TEST_CASE("empty clause and contradictory units") {
  auto e = encode_poly_system(CnfFormula::from_clauses({Clause{}}));
  REQUIRE(e.equations.size() == 1);
  CHECK(e.equations[0].poly == Polynomial::constant(1));
  CHECK(!solvable_01(e));
  auto le = encode_linear_system(CnfFormula::from_clauses({Clause{}}));
  CHECK(write_linear_system(le) == "0 >= 1\nbounds 0 1\n\n");
  CHECK(!solvable_01(le));

  CnfFormula pp = CnfFormula::from_clauses({Clause{pos("p")}, Clause{neg("p")}});
  auto ps = encode_poly_system(pp);
  CHECK(ps.equations[0].poly == Polynomial::constant(1) - Polynomial::var(Atom("p")));
  CHECK(ps.equations[1].poly == Polynomial::var(Atom("p")));
  CHECK(!solvable_01(ps));
  CHECK(solvable_01(PolynomialSystem{}));
  CHECK(solvable_01(LinearSystem{}));
}

TEST_CASE("linear clause example") {
  auto s = encode_linear_system(CnfFormula::from_clauses({Clause{pos("p"), neg("q"), pos("r")}}));
  REQUIRE(s.constraints.size() == 1);
  CHECK(write_linear_system(s) == "1*p + -1*q + 1*r >= 0\nbounds 0 1\np q r\n");
  CHECK(s.constraint_count() == 7);
}

TEST_CASE("pigeonhole linear system") {
  CnfFormula cnf = php_cnf(3, 2, true);
  auto s = encode_linear_system(cnf);
  CHECK(s.constraints.size() == 12);
  CHECK(s.constraint_count() == 12 + 2 * 6);
  CHECK(!solvable_01(s));
  CHECK(!solvable_01(encode_poly_system(cnf)));
}

TEST_CASE("three-way equivalence") {
  int sat = 0;
  auto corpus = equivalence_corpus();
  for (const CnfFormula& cnf : corpus) {
    bool expect = testing::satisfiable_by_enumeration(cnf);
    sat += expect;
    auto ps = encode_poly_system(cnf);
    auto ls = encode_linear_system(cnf);
    CHECK(ps.equations.size() == cnf.clauses.size() + cnf.atoms.size());
    CHECK(ls.constraint_count() == cnf.clauses.size() + 2 * cnf.atoms.size());
    CHECK(solvable_01(ps) == expect);
    CHECK(solvable_01(ls) == expect);
  }
  CHECK(sat > 0);
  CHECK(sat < static_cast<int>(corpus.size()));
}

TEST_CASE("normal form agrees with the product") {
  std::mt19937 rng(9);
  for (int t = 0; t < 60; ++t) {
    CnfFormula cnf = testing::random_cnf(rng, 6, 8, 4);
    auto ps = encode_poly_system(cnf);
    auto ls = encode_linear_system(cnf);
    for (std::uint64_t bits = 0; bits < (1ull << cnf.atoms.size()); ++bits) {
      Assignment a;
      for (std::size_t i = 0; i < cnf.atoms.size(); ++i) a[cnf.atoms[i].id()] = (bits >> i) & 1;
      for (std::size_t k = 0; k < cnf.clauses.size(); ++k) {
        CHECK(ps.equations[k].poly.evaluate(a) == product_value(cnf.clauses[k], a));
        std::int64_t lhs = 0;
        for (auto [x, c] : ls.constraints[k].coeffs) lhs += a.at(x.id()) ? c : 0;
        CHECK((lhs >= ls.constraints[k].bound) == clause_satisfied(cnf.clauses[k], a));
      }
    }
  }
}

TEST_CASE("system text round trip") {
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    CnfFormula cnf = testing::random_cnf(rng, 6, 8, 4);
    auto ps = encode_poly_system(cnf);
    auto back = parse_poly_system(write_poly_system(ps));
    REQUIRE(back.equations.size() == ps.equations.size());
    for (std::size_t i = 0; i < ps.equations.size(); ++i) {
      CHECK(back.equations[i].poly == ps.equations[i].poly);
      CHECK(back.equations[i].reduced == ps.equations[i].reduced);
    }
    CHECK(solvable_01(back) == solvable_01(ps));
    auto ls = encode_linear_system(cnf);
    CHECK(write_linear_system(parse_linear_system(write_linear_system(ls))) == write_linear_system(ls));
  }
  CHECK_THROWS_AS(parse_linear_system("1*p >= 1\n"), ParseError);
  CHECK_THROWS_AS(parse_linear_system("1*p*q >= 1\nbounds 0 1\np q\n"), ParseError);
  CHECK_THROWS_AS(parse_linear_system("1*p >= 1\nbounds 0 1\nq\n"), MissingAtomError);
  CHECK_THROWS_AS(parse_poly_system("1*p + = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_poly_system("1*p = 1\n"), ParseError);
}

TEST_CASE("enumeration limit") {
  std::vector<Clause> cs;
  for (int i = 0; i < 25; ++i) cs.push_back(Clause{pos("z" + std::to_string(i))});
  CnfFormula cnf = CnfFormula::from_clauses(cs);
  CHECK_THROWS_AS(solvable_01(encode_poly_system(cnf)), TooManyAtomsError);
  CHECK_THROWS_AS(solvable_01(encode_linear_system(cnf)), TooManyAtomsError);
  CHECK(solvable_01(encode_linear_system(cnf), 25));
}
