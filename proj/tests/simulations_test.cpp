#include <cmath>
#include <random>

#include "doctest.h"
#include "pcw/generators.hpp"
#include "pcw/php_prover.hpp"
#include "pcw/resolution_tools.hpp"
#include "pcw/simulations.hpp"
#include "support.hpp"

using namespace pcw;

namespace {

bool unsat_by_enumeration(const CnfFormula& cnf) {
  REQUIRE(cnf.atoms.size() <= 20);
  return !testing::satisfiable_by_enumeration(cnf);
}

bool tautology_by_enumeration(Formula f) {
  auto atoms = atoms_of(f);
  REQUIRE(atoms.size() <= 20);
  for (std::uint64_t bits = 0; bits < (1ull << atoms.size()); ++bits)
    if (!testing::naive_eval(f, atoms, bits)) return false;
  return true;
}

ResolutionDocument res_doc(const CnfFormula& cnf, ResolutionProof p, ResSystem s = ResSystem::Res) {
  ResolutionDocument d;
  d.system = s;
  d.cnf_path = "-";
  d.cnf = cnf;
  d.proof = std::move(p);
  return d;
}

AnyProof php_refutation(int n) { return AnyProof::of(res_doc(php_cnf(n, n - 1, false), dpll_refutation(php_cnf(n, n - 1, false))), Calculus::Res); }

// least squares computed directly from the definition
double fitted_slope(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pts) {
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += std::log(double(x)) / pts.size();
    my += std::log(double(y)) / pts.size();
  }
  double num = 0, den = 0;
  for (auto [x, y] : pts) {
    num += (std::log(double(x)) - mx) * (std::log(double(y)) - my);
    den += (std::log(double(x)) - mx) * (std::log(double(x)) - mx);
  }
  return num / den;
}

// ER refutation mixing extension lines into a DPLL derivation
ResolutionDocument random_er(std::mt19937& rng, const CnfFormula& cnf) {
  ResolutionWriter w;
  std::vector<long> pool;
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i) pool.push_back(w.input(i + 1, cnf.clauses[i]));
  int k = 1 + static_cast<int>(rng() % 3);
  std::vector<Atom> avail = cnf.atoms;
  for (int j = 0; j < k; ++j) {
    Literal a{avail[rng() % avail.size()], bool(rng() & 1)};
    Literal b{avail[rng() % avail.size()], bool(rng() & 1)};
    Atom q("e_r" + std::to_string(j));
    auto ids = w.extend(q, a, b);
    pool.insert(pool.begin(), ids.begin(), ids.end());
    avail.push_back(q);
  }
  derive_by_dpll(w, pool, Clause{});
  return res_doc(cnf, w.take(), ResSystem::ER);
}

std::vector<CnfFormula> random_unsat(std::mt19937& rng, int count) {
  std::vector<CnfFormula> out;
  while (static_cast<int>(out.size()) < count) {
    CnfFormula c = testing::random_cnf(rng, 4, 10, 3);
    if (!c.clauses.empty() && unsat_by_enumeration(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("dpll refutations are tree-like and exist exactly for unsatisfiable CNFs") {
  for (int n = 2; n <= 4; ++n) {
    CnfFormula cnf = php_cnf(n, n - 1, n == 3);
    auto r = check_resolution(cnf, dpll_refutation(cnf), true);
    CHECK(r.verdict_line() == "ACCEPT");
  }
  std::mt19937 rng(11);
  int sat = 0, unsat = 0;
  for (int t = 0; t < 300; ++t) {
    CnfFormula c = testing::random_cnf(rng, 5, 12, 3);
    if (unsat_by_enumeration(c)) {
      ++unsat;
      CHECK(check_resolution(c, dpll_refutation(c), true).accepted);
    } else {
      ++sat;
      CHECK_THROWS_AS(dpll_refutation(c), std::logic_error);
    }
  }
  CHECK(sat > 0);
  CHECK(unsat > 0);
}

TEST_CASE("F to EF keeps every line") {
  auto f = build_ef_proof_php(2).proof;
  f.variant = FregeVariant::F;
  auto t = translate(Calculus::F, Calculus::EF, AnyProof::of(f));
  CHECK(t.target.hilbert.variant == FregeVariant::EF);
  std::string a = write_hilbert(f), b = t.target.text();
  CHECK(a.substr(a.find('\n')) == b.substr(b.find('\n')));
  CHECK(t.source_symbols == t.target_symbols);
  CHECK(t.stats_line() == "source_symbols=" + std::to_string(t.source_symbols) +
                              " target_symbols=" + std::to_string(t.source_symbols));
}

TEST_CASE("ER to EF on pigeonhole refutations") {
  for (int n = 2; n <= 4; ++n) {
    auto t = translate(Calculus::Res, Calculus::EF, php_refutation(n));
    CHECK(t.target.check().accepted);
    CHECK(*t.target.check().conclusion == php_formula(n, n - 1, false));
    CHECK(t.conclusion == php_formula(n, n - 1, false));
  }
}

TEST_CASE("ER to EF on random extended refutations") {
  std::mt19937 rng(5);
  for (const CnfFormula& cnf : random_unsat(rng, 40)) {
    ResolutionDocument d = random_er(rng, cnf);
    REQUIRE(check_extended_resolution(cnf, d.proof).accepted);
    auto t = translate(Calculus::ER, Calculus::EF, AnyProof::of(d, Calculus::ER));
    auto r = t.target.check();
    REQUIRE(r.accepted);
    CHECK(*r.conclusion == dnf_negation(cnf));
    CHECK(tautology_by_enumeration(*r.conclusion));
  }
}

TEST_CASE("EF to ER on the pigeonhole proof") {
  auto src = build_ef_proof_php(3).proof;
  auto t = translate(Calculus::EF, Calculus::ER, AnyProof::of(src));
  const ResolutionDocument& d = t.target.refutation;
  CHECK(check_extended_resolution(d.cnf, d.proof).verdict_line() == "ACCEPT");
  CHECK(unsat_by_enumeration(d.cnf));
  CHECK(dnf_negation(d.cnf) == php_formula(3, 2, false));
  // the text form reparses to the same verdict
  auto again = parse_resolution(t.target.text());
  CHECK(check_extended_resolution(again.cnf, again.proof).accepted);
}

TEST_CASE("EF to SF discharges every extension") {
  for (int n = 2; n <= 4; ++n) {
    auto src = build_ef_proof_php(n).proof;
    auto t = translate(Calculus::EF, Calculus::SF, AnyProof::of(src));
    auto r = t.target.check();
    CHECK(r.accepted);
    CHECK(*r.conclusion == php_formula(n, n - 1, false));
    for (const HilLine& l : t.target.hilbert.lines) CHECK(l.kind != HilKind::Ext);
  }
}

TEST_CASE("EF to ER to EF round trip") {
  for (int n = 2; n <= 3; ++n) {
    auto src = AnyProof::of(build_ef_proof_php(n).proof);
    auto er = translate(Calculus::EF, Calculus::ER, src);
    auto back = translate(Calculus::ER, Calculus::EF, er.target);
    CHECK(back.conclusion == php_formula(n, n - 1, false));
    CHECK(*back.target.check().conclusion == *src.check().conclusion);
  }
}

TEST_CASE("translation errors") {
  auto f = AnyProof::of(build_ef_proof_php(2).proof);
  f.system = Calculus::F;
  f.hilbert.variant = FregeVariant::F;
  CHECK_THROWS_AS(translate(Calculus::EF, Calculus::F, f), UnsupportedPairError);
  CHECK_THROWS_AS(translate(Calculus::SF, Calculus::EF, f), UnsupportedPairError);
  CHECK_THROWS_AS(translate(Calculus::ER, Calculus::Res, f), UnsupportedPairError);
  AnyProof bad = f;
  bad.hilbert.lines.back().formula = Formula::var("p");
  CHECK_THROWS_AS(translate(Calculus::F, Calculus::EF, bad), SourceInvalidError);
  AnyProof res = php_refutation(2);
  res.refutation.proof.lines.pop_back();
  CHECK_THROWS_AS(translate(Calculus::Res, Calculus::EF, res), SourceInvalidError);
  CHECK_THROWS_AS(simulation_report(Calculus::F, Calculus::EF, {}), EmptyCorpusError);
  // a tautology that is not in DNF shape cannot become a refutation of its own clauses
  HilbertProof ax;
  ax.variant = FregeVariant::EF;
  HilLine l;
  l.id = 1;
  l.scheme = 3;
  l.subst = {{Atom("P"), Formula::var("a")}, {Atom("Q"), Formula::var("b")}};
  l.formula = apply_substitution(frege_scheme(3), l.subst);
  ax.lines.push_back(l);
  CHECK_THROWS_AS(translate(Calculus::EF, Calculus::ER, AnyProof::of(ax)), UnsupportedPairError);
}

TEST_CASE("simulation slopes") {
  std::vector<AnyProof> f_corpus, res_corpus, ef_corpus;
  for (int n = 2; n <= 4; ++n) {
    res_corpus.push_back(php_refutation(n));
    HilbertProof p = translate(Calculus::Res, Calculus::EF, php_refutation(n)).target.hilbert;
    p.variant = FregeVariant::F;
    f_corpus.push_back(AnyProof::of(p));
  }
  for (int n = 2; n <= 6; ++n) ef_corpus.push_back(AnyProof::of(build_ef_proof_php(n).proof));

  auto fe = simulation_report(Calculus::F, Calculus::EF, f_corpus);
  CHECK(fe.slope == doctest::Approx(1.0));
  CHECK(fitted_slope(fe.points) == doctest::Approx(1.0));

  auto re = simulation_report(Calculus::Res, Calculus::EF, res_corpus);
  CHECK(re.slope == doctest::Approx(fitted_slope(re.points)));
  MESSAGE("ER->EF slope " << re.slope);
  CHECK(re.slope <= 3.0);

  auto es = simulation_report(Calculus::EF, Calculus::SF, ef_corpus);
  MESSAGE("EF->SF slope " << es.slope);
  CHECK(es.slope == doctest::Approx(fitted_slope(es.points)));
  CHECK(es.slope <= 3.0);

  std::vector<AnyProof> small(ef_corpus.begin(), ef_corpus.begin() + 3);
  auto ee = simulation_report(Calculus::EF, Calculus::ER, small);
  MESSAGE("EF->ER slope " << ee.slope);
  CHECK(ee.slope <= 3.0);
}
