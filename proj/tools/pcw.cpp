#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pcw/algebraic.hpp"
#include "pcw/generators.hpp"
#include "pcw/php_prover.hpp"
#include "pcw/workbench.hpp"

using namespace pcw;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot write '" + out + "'");
  f << text;
}

std::string dir_of(const std::string& path) {
  auto d = std::filesystem::path(path).parent_path();
  return d.empty() ? "." : d.string();
}

Calculus calculus(const std::string& name) {
  auto c = parse_calculus(name);
  if (!c) throw UsageError("unknown system '" + name + "'");
  return *c;
}

std::string form_text(bool dnf, const CnfFormula& cnf) {
  return dnf ? render_formula(dnf_negation(cnf)) + "\n" : write_dimacs(cnf);
}

CnfFormula read_cnf(const std::string& path) { return parse_dimacs(slurp(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof complexity workbench"};
  app.require_subcommand(1);

  std::string out, form = "cnf", system, from, to, file, target, graph_file, circuit_file;
  int pigeons = 0, holes = 0, n = 0;
  unsigned jobs = 1;
  bool functionality = false, solve = false;
  SearchBudget budget;

  auto add_form = [&](CLI::App* c) {
    c->add_option("--form", form, "cnf or dnf")->check(CLI::IsMember({"cnf", "dnf"}));
    c->add_option("-o", out, "output path");
  };

  auto* gen = app.add_subcommand("gen", "generate a tautology family instance");
  gen->require_subcommand(1);
  auto* gen_php_cmd = gen->add_subcommand("php", "pigeonhole principle");
  gen_php_cmd->add_option("--pigeons", pigeons)->required();
  gen_php_cmd->add_option("--holes", holes)->required();
  gen_php_cmd->add_flag("--functionality", functionality);
  add_form(gen_php_cmd);
  auto* gen_ts = gen->add_subcommand("tseitin", "parity constraints on a charged graph");
  gen_ts->add_option("--graph", graph_file, "graph file")->required();
  add_form(gen_ts);
  auto* gen_tau_cmd = gen->add_subcommand("tau", "range avoidance of a circuit");
  gen_tau_cmd->add_option("--circuit", circuit_file, "circuit file")->required();
  gen_tau_cmd->add_option("--target", target, "bit string of length 2n")->required();
  add_form(gen_tau_cmd);

  auto* check = app.add_subcommand("check", "check a proof");
  check->add_option("--system", system, "RES|TREERES|ER|F|EF|SF")->required();
  check->add_option("file", file)->required();

  auto* tr = app.add_subcommand("translate", "translate a proof between calculi");
  tr->add_option("--from", from)->required();
  tr->add_option("--to", to)->required();
  tr->add_option("file", file)->required();
  tr->add_option("-o", out, "output path; stats go to <path>.stats");

  auto* prove = app.add_subcommand("prove-php", "extended Frege proof of the pigeonhole principle");
  prove->add_option("--n,--pigeons", n, "pigeons; holes are n-1")->required();
  prove->add_flag("--functionality", functionality);
  prove->add_option("-o", out);

  auto* enc = app.add_subcommand("encode", "algebraic encodings of a CNF");
  enc->require_subcommand(1);
  auto* enc_poly = enc->add_subcommand("poly", "polynomial equations");
  auto* enc_ilp = enc->add_subcommand("ilp", "integer linear inequalities");
  for (auto* c : {enc_poly, enc_ilp}) {
    c->add_option("file", file, "DIMACS file")->required();
    c->add_option("-o", out);
    c->add_flag("--solve", solve, "also decide 0-1 solvability");
  }

  auto* measure = app.add_subcommand("measure", "steps and symbols of a proof");
  measure->add_option("file", file)->required();

  auto* search = app.add_subcommand("search-min-res", "fewest resolution steps refuting a CNF");
  search->add_option("file", file, "DIMACS file");
  search->add_option("--pigeons", pigeons);
  search->add_option("--holes", holes);
  search->add_flag("--functionality", functionality);
  search->add_option("--budget-lines", budget.max_lines);
  search->add_option("--budget-secs", budget.max_seconds);

  auto* corpus = app.add_subcommand("corpus", "run a corpus config and write a CSV report");
  corpus->add_option("config", file)->required();
  corpus->add_option("--jobs", jobs);
  corpus->add_option("-o", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen_php_cmd->parsed()) {
      PhpParams p{pigeons, holes, functionality, form == "dnf" ? PhpForm::DnfTautology : PhpForm::CnfContradiction};
      PhpInstance inst = gen_php(p);
      emit(out, form == "dnf" ? render_formula(inst.formula) + "\n" : write_dimacs(inst.cnf));
    } else if (gen_ts->parsed()) {
      GraphInstance g = parse_graph(slurp(graph_file));
      emit(out, form_text(form == "dnf", gen_tseitin(g.graph, g.charges)));
    } else if (gen_tau_cmd->parsed()) {
      TauInstance t{parse_circuit(slurp(circuit_file)), target};
      emit(out, form == "dnf" ? render_formula(gen_tau(t)) + "\n" : write_dimacs(tau_cnf(t)));
    } else if (check->parsed()) {
      Calculus c = calculus(system);
      AnyProof p = parse_any_proof(slurp(file), dir_of(file), c == Calculus::TreeRes);
      if (p.system != c) {
        std::cout << "REJECT 0 WRONG_SYSTEM\n";
        return 1;
      }
      CheckReport r = p.check();
      std::cout << r.verdict_line() << '\n';
      return r.accepted ? 0 : 1;
    } else if (tr->parsed()) {
      Calculus a = calculus(from), b = calculus(to);
      AnyProof p = parse_any_proof(slurp(file), dir_of(file), a == Calculus::TreeRes);
      TranslationResult t = translate(a, b, p);
      emit(out, t.target.text());
      if (out.empty() || out == "-")
        std::cerr << t.stats_line() << '\n';
      else
        emit(out + ".stats", t.stats_line() + "\n");
    } else if (prove->parsed()) {
      PhpProofArtifacts art = build_ef_proof_php(n, functionality);
      emit(out, write_hilbert(art.proof));
      std::cerr << php_stats_line(art) << '\n';
    } else if (enc_poly->parsed()) {
      PolynomialSystem s = encode_poly_system(read_cnf(file));
      emit(out, write_poly_system(s));
      if (solve) std::cerr << (solvable_01(s) ? "solvable" : "unsolvable") << '\n';
    } else if (enc_ilp->parsed()) {
      LinearSystem s = encode_linear_system(read_cnf(file));
      emit(out, write_linear_system(s));
      if (solve) std::cerr << (solvable_01(s) ? "feasible" : "infeasible") << '\n';
    } else if (measure->parsed()) {
      SizeReport r = measure_proof(slurp(file), dir_of(file), file);
      std::cout << "system=" << to_string(r.system) << " steps=" << r.steps << " symbols=" << r.symbols << '\n';
    } else if (search->parsed()) {
      CnfFormula cnf;
      if (!file.empty())
        cnf = read_cnf(file);
      else if (pigeons > 0)
        cnf = php_cnf(pigeons, holes, functionality);
      else
        throw UsageError("give a DIMACS file or --pigeons/--holes");
      MinResResult r = min_resolution_steps(cnf, budget);
      std::cout << r.to_string() << '\n';
      return r.exceeded ? 1 : 0;
    } else if (corpus->parsed()) {
      auto rows = run_corpus(file, jobs);
      emit(out, corpus_csv(rows));
      for (const CorpusRow& r : rows)
        if (r.verdict != "ACCEPT") return 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
