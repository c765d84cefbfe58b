#include "pcw/workbench.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pcw/generators.hpp"
#include "pcw/php_prover.hpp"
#include "pcw/resolution_tools.hpp"

namespace pcw {

namespace {

std::string header_system(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::istringstream line{std::string(text.substr(pos, nl - pos))};
    std::string a, b;
    line >> a;
    if (!a.empty() && a[0] != '#' && a != "c") {
      line >> b;
      if (a != "system") throw ParseError(pos, "expected `system <name>`");
      return b;
    }
    pos = nl + 1;
  }
  throw ParseError(text.size(), "missing system header");
}

}  // namespace

AnyProof parse_any_proof(std::string_view text, const std::string& base_dir, bool as_tree) {
  std::string sys = header_system(text);
  if (sys == "RES" || sys == "ER") {
    Calculus c = sys == "ER" ? Calculus::ER : as_tree ? Calculus::TreeRes : Calculus::Res;
    return AnyProof::of(parse_resolution(text, base_dir), c);
  }
  return AnyProof::of(parse_hilbert(text));
}

SizeReport measure_proof(const AnyProof& proof, const std::string& label) {
  SizeReport r;
  r.label = label;
  r.system = proof.system;
  if (proof.refutational()) {
    measure_resolution(proof.refutation.proof, r.steps, r.symbols);
  } else {
    r.steps = proof.hilbert.lines.size();
    for (const HilLine& l : proof.hilbert.lines) r.symbols += l.formula.size();
  }
  return r;
}

SizeReport measure_proof(std::string_view text, const std::string& base_dir, const std::string& label) {
  return measure_proof(parse_any_proof(text, base_dir), label);
}

// ---------------------------------------------------------------------------
// corpus

namespace {

struct Task {
  std::string label;
  std::string kind;
  nlohmann::json job;
  int n = 0;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read '" + p.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string php_verdict(const CheckReport& r, Formula expect) {
  if (!r.accepted) return r.verdict_line();
  return *r.conclusion == expect ? "ACCEPT" : "MISMATCH";
}

void run_task(const Task& t, const std::filesystem::path& dir, CorpusRow& row) {
  const nlohmann::json& j = t.job;
  row.label = t.label;
  if (t.kind == "prove-php") {
    bool func = j.value("functionality", false);
    auto art = build_ef_proof_php(t.n, func);
    AnyProof p = AnyProof::of(std::move(art.proof));
    row.system = to_string(p.system);
    CheckReport r = p.check();
    row.steps = r.steps;
    row.symbols = r.symbols;
    row.verdict = php_verdict(r, php_formula(t.n, t.n - 1, func));
  } else if (t.kind == "refute-php") {
    bool func = j.value("functionality", false);
    CnfFormula cnf = php_cnf(t.n, t.n - 1, func);
    ResolutionDocument d;
    d.cnf_path = "-";
    d.cnf = cnf;
    d.proof = dpll_refutation(cnf);
    AnyProof p = AnyProof::of(std::move(d), Calculus::TreeRes);
    row.system = to_string(p.system);
    CheckReport r = p.check();
    row.steps = r.steps;
    row.symbols = r.symbols;
    row.verdict = php_verdict(r, php_formula(t.n, t.n - 1, func));
  } else if (t.kind == "check" || t.kind == "translate") {
    std::filesystem::path path = dir / j.at("path").get<std::string>();
    std::string text = read_file(path);
    bool tree = false;
    if (t.kind == "check") {
      row.system = j.value("system", std::string());
      auto sys = parse_calculus(row.system);
      if (!sys) throw std::invalid_argument("unknown system '" + row.system + "'");
      tree = *sys == Calculus::TreeRes;
    }
    AnyProof p = parse_any_proof(text, path.parent_path().string(), tree);
    if (t.kind == "check") {
      if (*parse_calculus(row.system) != p.system) {
        row.verdict = "ERROR(SYSTEM)";
        return;
      }
      CheckReport r = p.check();
      row.system = to_string(p.system);
      row.steps = r.steps;
      row.symbols = r.symbols;
      row.verdict = r.verdict_line();
    } else {
      auto from = parse_calculus(j.at("from").get<std::string>());
      auto to = parse_calculus(j.at("to").get<std::string>());
      if (!from || !to) throw std::invalid_argument("unknown calculus");
      if (*from == Calculus::TreeRes && p.system == Calculus::Res) p.system = Calculus::TreeRes;
      TranslationResult tr = translate(*from, *to, p);
      row.system = to_string(*to);
      CheckReport r = tr.target.check();
      row.steps = r.steps;
      row.symbols = r.symbols;
      row.verdict = r.verdict_line();
    }
  } else {
    throw std::invalid_argument("unknown job kind '" + t.kind + "'");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<CorpusRow> run_corpus(const std::string& config_path, unsigned jobs) {
  std::filesystem::path cfg(config_path);
  std::string text = read_file(cfg);
  std::vector<Task> tasks;
  if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
    nlohmann::json doc = nlohmann::json::parse(text);
    std::size_t k = 0;
    for (const nlohmann::json& j : doc.at("jobs")) {
      ++k;
      Task t;
      t.kind = j.value("kind", std::string());
      t.label = j.value("label", t.kind + "-" + std::to_string(k));
      t.job = j;
      if (t.kind == "prove-php" || t.kind == "refute-php") {
        int lo = j.contains("n") ? j.at("n").get<int>() : j.value("n_from", 2);
        int hi = j.contains("n") ? lo : j.value("n_to", lo);
        for (int n = lo; n <= hi; ++n) {
          Task u = t;
          u.n = n;
          if (!j.contains("n")) u.label = t.label + "-" + std::to_string(n);
          tasks.push_back(std::move(u));
        }
      } else {
        tasks.push_back(std::move(t));
      }
    }
  }

  std::vector<CorpusRow> rows(tasks.size());
  std::filesystem::path dir = cfg.parent_path();
  if (dir.empty()) dir = ".";
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      auto t0 = std::chrono::steady_clock::now();
      CorpusRow& row = rows[i];
      try {
        run_task(tasks[i], dir, row);
      } catch (const std::ios_base::failure&) {
        row.verdict = "ERROR(IO)";
      } catch (const ParseError&) {
        row.verdict = "ERROR(PARSE)";
      } catch (const UnsupportedPairError&) {
        row.verdict = "ERROR(UNSUPPORTED)";
      } catch (const SourceInvalidError&) {
        row.verdict = "ERROR(SOURCE_INVALID)";
      } catch (const std::exception&) {
        row.verdict = "ERROR(JOB)";
      }
      row.label = tasks[i].label;
      row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string corpus_csv(const std::vector<CorpusRow>& rows) {
  std::ostringstream out;
  out << "label,system,steps,symbols,verdict,millis\n";
  for (const CorpusRow& r : rows)
    out << csv_field(r.label) << ',' << csv_field(r.system) << ',' << r.steps << ',' << r.symbols << ','
        << csv_field(r.verdict) << ',' << r.millis << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// fault injection

namespace {

std::optional<AnyProof> mutate_hilbert(const AnyProof& src, std::mt19937& rng) {
  AnyProof p = src;
  auto& lines = p.hilbert.lines;
  std::size_t i = rng() % lines.size();
  HilLine& L = lines[i];
  auto formula_of = [&](long id) -> std::optional<Formula> {
    for (std::size_t k = 0; k < i; ++k)
      if (lines[k].id == id) return lines[k].formula;
    return std::nullopt;
  };
  switch (rng() % 3) {
    case 0:
      L.formula = Formula::negation(L.formula);
      return p;
    case 1: {
      if (L.kind == HilKind::Mp) {
        long& ref = (rng() & 1) ? L.p1 : L.p2;
        auto old = formula_of(ref);
        std::vector<long> other;
        for (std::size_t k = 0; k < i; ++k)
          if (!old || lines[k].formula != *old) other.push_back(lines[k].id);
        if (other.empty()) return std::nullopt;
        ref = other[rng() % other.size()];
        return p;
      }
      return std::nullopt;
    }
    default: {
      if (L.kind != HilKind::Ax || L.subst.empty()) return std::nullopt;
      auto it = L.subst.begin();
      std::advance(it, rng() % L.subst.size());
      it->second = Formula::negation(it->second);
      return p;
    }
  }
}

std::optional<AnyProof> mutate_resolution(const AnyProof& src, std::mt19937& rng) {
  AnyProof p = src;
  auto& lines = p.refutation.proof.lines;
  std::size_t i = rng() % lines.size();
  ResLine& L = lines[i];
  std::vector<Literal> lits = L.clause.literals();
  switch (rng() % 4) {
    case 0: {
      if (L.kind == ResKind::ExtendDef) {
        L.l1 = ~L.l1;
        return p;
      }
      if (lits.empty()) return std::nullopt;
      std::size_t k = rng() % lits.size();
      lits[k] = ~lits[k];
      break;
    }
    case 1:
      if (L.kind == ResKind::ExtendDef || lits.empty()) return std::nullopt;
      lits.erase(lits.begin() + rng() % lits.size());
      break;
    case 2: {
      if (L.kind == ResKind::ExtendDef) return std::nullopt;
      std::vector<Atom> absent;
      for (Atom a : p.refutation.cnf.atoms)
        if (!L.clause.contains(Literal{a, true}) && !L.clause.contains(Literal{a, false})) absent.push_back(a);
      if (absent.empty()) return std::nullopt;
      lits.push_back(Literal{absent[rng() % absent.size()], static_cast<bool>(rng() & 1)});
      break;
    }
    default: {
      if (L.kind != ResKind::Resolve) return std::nullopt;
      const Clause* c1 = nullptr;
      const Clause* c2 = nullptr;
      for (std::size_t k = 0; k < i; ++k) {
        if (lines[k].id == L.p1) c1 = &lines[k].clause;
        if (lines[k].id == L.p2) c2 = &lines[k].clause;
      }
      // skip when both premises hold the pivot in both signs
      if (c1 && c2 && c2->contains(Literal{L.pivot, true}) && c1->contains(Literal{L.pivot, false}))
        return std::nullopt;
      std::swap(L.p1, L.p2);
      return p;
    }
  }
  L.clause = Clause(std::move(lits));
  return p;
}

}  // namespace

std::vector<AnyProof> single_line_mutations(const AnyProof& proof, std::mt19937& rng, std::size_t count) {
  std::vector<AnyProof> out;
  bool empty = proof.refutational() ? proof.refutation.proof.lines.empty() : proof.hilbert.lines.empty();
  if (empty) return out;
  for (std::size_t tries = 0; out.size() < count && tries < 50 * count; ++tries) {
    auto m = proof.refutational() ? mutate_resolution(proof, rng) : mutate_hilbert(proof, rng);
    if (m) out.push_back(std::move(*m));
  }
  return out;
}

}  // namespace pcw
