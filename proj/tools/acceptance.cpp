#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pcw/algebraic.hpp"
#include "pcw/generators.hpp"
#include "pcw/php_prover.hpp"
#include "pcw/resolution_tools.hpp"
#include "pcw/workbench.hpp"
#include "support.hpp"

using namespace pcw;

namespace {

constexpr std::size_t kPhp3MinSteps = 10;

struct Outcome {
  bool pass = true;
  std::string note;
};

bool taut_by_enumeration(Formula f) {
  auto atoms = atoms_of(f);
  for (std::uint64_t bits = 0; bits < (1ull << atoms.size()); ++bits)
    if (!testing::naive_eval(f, atoms, bits)) return false;
  return true;
}

double slope(const std::vector<std::pair<double, double>>& pts) {
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += std::log(x) / pts.size();
    my += std::log(y) / pts.size();
  }
  double num = 0, den = 0;
  for (auto [x, y] : pts) {
    num += (std::log(x) - mx) * (std::log(y) - my);
    den += (std::log(x) - mx) * (std::log(x) - mx);
  }
  return num / den;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

AnyProof res_proof(const CnfFormula& cnf, ResolutionProof p, Calculus c) {
  ResolutionDocument d;
  d.cnf_path = "-";
  d.cnf = cnf;
  d.proof = std::move(p);
  return AnyProof::of(std::move(d), c);
}

// accepted proofs shared by criteria 3, 7 and 8
struct Corpus {
  std::vector<AnyProof> f, res, er, ef;
  std::vector<AnyProof> all() const {
    std::vector<AnyProof> v;
    for (auto* part : {&f, &res, &er, &ef}) v.insert(v.end(), part->begin(), part->end());
    return v;
  }
};

Corpus& corpus() {
  static Corpus c = [] {
    Corpus c;
    for (int n = 2; n <= 5; ++n) c.ef.push_back(AnyProof::of(build_ef_proof_php(n).proof));
    for (int n = 2; n <= 4; ++n) {
      CnfFormula cnf = php_cnf(n, n - 1, false);
      AnyProof res = res_proof(cnf, dpll_refutation(cnf), Calculus::Res);
      HilbertProof f = translate(Calculus::Res, Calculus::EF, res).target.hilbert;
      c.res.push_back(res);
      c.res.push_back(res_proof(cnf, res.refutation.proof, Calculus::TreeRes));
      f.variant = FregeVariant::F;
      c.f.push_back(AnyProof::of(std::move(f)));
    }
    for (int n = 2; n <= 3; ++n) c.er.push_back(translate(Calculus::EF, Calculus::ER, c.ef[n - 2]).target);
    return c;
  }();
  return c;
}

Outcome php_tautologyhood() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    if (brute_force_classify(gen_php({n, n - 1, false, PhpForm::DnfTautology}).formula) != Classification::Tautology)
      o = {false, "PHP_" + std::to_string(n) + " DNF not a tautology"};
    if (brute_force_satisfiable(php_cnf(n, n - 1, false))) o = {false, "PHP_" + std::to_string(n) + " CNF satisfiable"};
  }
  int sat = 0;
  for (int m = 2; m <= 4; ++m)
    for (int h = m; h <= 4; ++h) {
      if (!testing::satisfiable_by_enumeration(php_cnf(m, h, false))) o = {false, "PHP(m<=h) unsatisfiable"};
      ++sat;
    }
  if (o.pass) o.note = "n=2..5 tautologies, " + std::to_string(sat) + " m<=h instances satisfiable";
  return o;
}

Outcome ef_upper_bound() {
  std::vector<std::pair<double, double>> pts;
  std::uint64_t prev = 0;
  std::ostringstream sizes;
  for (int n = 2; n <= 12; ++n) {
    auto art = build_ef_proof_php(n);
    CheckReport r = check_frege_family(art.proof);
    if (!r.accepted) return {false, "n=" + std::to_string(n) + " " + r.verdict_line()};
    if (*r.conclusion != php_formula(n, n - 1, false)) return {false, "n=" + std::to_string(n) + " wrong conclusion"};
    if (r.symbols <= prev) return {false, "symbols not monotone at n=" + std::to_string(n)};
    prev = r.symbols;
    if (n >= 4) pts.emplace_back(n, static_cast<double>(r.symbols));
    sizes << (n > 2 ? " " : "") << r.symbols;
  }
  double s = slope(pts);
  return {s <= 5.0, "slope " + fmt(s) + " (bound 5); symbols n=2..12: " + sizes.str()};
}

Outcome simulation_contract() {
  Corpus& c = corpus();
  struct Pair {
    Calculus from, to;
    std::vector<AnyProof> src;
  };
  std::vector<AnyProof> ef_small(c.ef.begin(), c.ef.begin() + 3), ef_big = c.ef;
  ef_big.push_back(AnyProof::of(build_ef_proof_php(6).proof));
  std::vector<AnyProof> er_src;
  for (const AnyProof& p : c.res)
    if (p.system == Calculus::Res) er_src.push_back(AnyProof::of(p.refutation, Calculus::ER));
  std::vector<Pair> pairs{{Calculus::F, Calculus::EF, c.f},
                          {Calculus::ER, Calculus::EF, er_src},
                          {Calculus::EF, Calculus::ER, ef_small},
                          {Calculus::EF, Calculus::SF, ef_big}};
  Outcome o;
  std::string notes;
  for (const Pair& p : pairs) {
    std::vector<std::pair<double, double>> pts;
    for (const AnyProof& s : p.src) {
      CheckReport sr = s.check();
      TranslationResult t = translate(p.from, p.to, s);
      CheckReport tr = t.target.check();
      if (!tr.accepted || *tr.conclusion != *sr.conclusion) {
        o.pass = false;
        notes += " " + to_string(p.from) + "->" + to_string(p.to) + " broke the contract";
      }
      pts.emplace_back(static_cast<double>(sr.symbols), static_cast<double>(tr.symbols));
    }
    double s = slope(pts);
    if (s > 3.0) o.pass = false;
    notes += " " + to_string(p.from) + "->" + to_string(p.to) + "=" + fmt(s);
  }
  o.note = "slopes (bound 3):" + notes;
  return o;
}

Outcome encoder_equivalence() {
  std::mt19937 rng(4242);
  std::vector<CnfFormula> cnfs;
  for (int i = 0; i < 200; ++i) cnfs.push_back(testing::random_cnf(rng, 10, 20, 4));
  for (int m = 2; m <= 4; ++m)
    for (int h = 1; h <= 4; ++h) cnfs.push_back(php_cnf(m, h, false));
  int disagree = 0, sat = 0;
  for (const CnfFormula& c : cnfs) {
    bool s = testing::satisfiable_by_enumeration(c);
    sat += s;
    if (solvable_01(encode_poly_system(c)) != s || solvable_01(encode_linear_system(c)) != s) ++disagree;
  }
  return {disagree == 0, std::to_string(cnfs.size()) + " CNFs (" + std::to_string(sat) + " satisfiable), " +
                             std::to_string(disagree) + " disagreements"};
}

Outcome tau_correctness() {
  std::mt19937 rng(77);
  int disagree = 0, inside = 0;
  for (int t = 0; t < 50; ++t) {
    Circuit c = testing::random_circuit(rng, 3, 4);
    auto range = circuit_range(c);
    std::string b;
    if (t % 2 == 0) {
      std::vector<bool> in;
      for (int k = 0; k < c.inputs; ++k) in.push_back(rng() & 1);
      for (bool v : eval_circuit(c, in)) b += v ? '1' : '0';
    } else {
      do {
        b.clear();
        for (int k = 0; k < 2 * c.inputs; ++k) b += (rng() & 1) ? '1' : '0';
      } while (range.count(b));
    }
    bool in_range = range.count(b) > 0;
    inside += in_range;
    if (taut_by_enumeration(gen_tau({c, b})) == in_range) ++disagree;
  }
  return {disagree == 0, "50 circuits (" + std::to_string(inside) + " targets in range), " + std::to_string(disagree) +
                             " disagreements"};
}

Outcome resolution_growth(double php4_secs) {
  auto r2 = min_resolution_steps(php_cnf(2, 1, false), {40, 60});
  auto r3 = min_resolution_steps(php_cnf(3, 2, false), {40, 600});
  auto r4 = min_resolution_steps(php_cnf(4, 3, false), {200, php4_secs});
  bool ok = !r2.exceeded && !r3.exceeded && r2.steps == 2 && r3.steps == kPhp3MinSteps && r2.steps < r3.steps;
  if (!r4.exceeded && r4.steps <= r3.steps) ok = false;
  return {ok, "PHP_2=" + r2.to_string() + " PHP_3=" + r3.to_string() + " PHP_4=" + r4.to_string()};
}

Outcome fault_injection() {
  std::mt19937 rng(99);
  std::size_t mutants = 0, accepted_mutants = 0, checked = 0;
  for (const AnyProof& p : corpus().all()) {
    CheckReport r = p.check();
    if (!r.accepted) return {false, "corpus proof rejected: " + r.verdict_line()};
    if (atoms_of(*r.conclusion).size() <= 24) {
      ++checked;
      if (!taut_by_enumeration(*r.conclusion)) return {false, "accepted conclusion is not a tautology"};
    }
    for (const AnyProof& m : single_line_mutations(p, rng, 40)) {
      ++mutants;
      CheckReport mr = m.check();
      if (mr.accepted) {
        ++accepted_mutants;
        if (atoms_of(*mr.conclusion).size() <= 24 && !taut_by_enumeration(*mr.conclusion))
          return {false, "checker accepted a non-tautology"};
      }
    }
  }
  return {accepted_mutants == 0 && mutants > 0,
          std::to_string(mutants) + " mutants, " + std::to_string(mutants - accepted_mutants) + " rejected; " +
              std::to_string(checked) + " conclusions verified by enumeration"};
}

Outcome as_function_contract() {
  std::size_t valid = 0;
  std::vector<std::string> texts;
  for (const AnyProof& p : corpus().all()) {
    std::string text = p.text();
    texts.push_back(text);
    if (as_function(p.system, text) != *p.check().conclusion)
      return {false, "wrong value on a valid " + to_string(p.system) + " proof"};
    ++valid;
  }
  std::mt19937 rng(1234);
  const Calculus systems[] = {Calculus::Res, Calculus::TreeRes, Calculus::ER, Calculus::F, Calculus::EF, Calculus::SF};
  std::size_t ones = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string w;
    if (i % 2 == 0) {
      std::size_t len = rng() % 200;
      for (std::size_t k = 0; k < len; ++k) w += static_cast<char>(rng() & 0xff);
    } else {
      const std::string& base = texts[rng() % texts.size()];
      w = base.substr(0, std::min<std::size_t>(base.size(), 400 + rng() % 400));
      for (int k = 0; k < 3; ++k) w[rng() % w.size()] = static_cast<char>(rng() & 0xff);
    }
    Formula f = as_function(systems[rng() % 6], w);
    ones += f == Formula::one();
  }
  return {ones == 1000, std::to_string(valid) + " valid proofs mapped to their conclusions; " + std::to_string(ones) +
                            "/1000 fuzzed inputs mapped to 1"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  double php4_secs = 20;
  app.add_option("--php4-secs", php4_secs, "search budget for PHP_4 minimal refutation");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"php tautologyhood", php_tautologyhood},
      {"ef upper bound", ef_upper_bound},
      {"simulation contract", simulation_contract},
      {"encoder equivalence", encoder_equivalence},
      {"tau correctness", tau_correctness},
      {"resolution growth", [&] { return resolution_growth(php4_secs); }},
      {"fault injection", fault_injection},
      {"as_function adapter", as_function_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].name << " [" << fmt(secs)
              << "s] " << o.note << std::endl;
  }
  return failed ? 1 : 0;
}
