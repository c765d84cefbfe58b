#include "pcw/resolution_tools.hpp"

#include <functional>
#include <stdexcept>

namespace pcw {

long ResolutionWriter::push(ResLine l) {
  l.id = next_id_++;
  index_[l.id] = proof_.lines.size();
  proof_.lines.push_back(std::move(l));
  return proof_.lines.back().id;
}

long ResolutionWriter::input(std::size_t index, const Clause& c) { return push(ResLine::input(0, index, c)); }

long ResolutionWriter::resolve(long a, long b, Atom pivot) {
  if (!clause(a).contains(Literal{pivot, true})) std::swap(a, b);
  const Clause& ca = clause(a);
  const Clause& cb = clause(b);
  if (!ca.contains(Literal{pivot, true}) || !cb.contains(Literal{pivot, false}))
    throw std::logic_error("resolve: pivot '" + pivot.name() + "' does not clash");
  std::vector<Literal> lits;
  for (Literal l : ca)
    if (l.atom != pivot) lits.push_back(l);
  for (Literal l : cb)
    if (l.atom != pivot) lits.push_back(l);
  return push(ResLine::resolve(0, a, b, pivot, Clause(std::move(lits))));
}

std::array<long, 3> ResolutionWriter::extend(Atom q, Literal l1, Literal l2) {
  long d = push(ResLine::extend_def(0, q, l1, l2));
  auto cl = extension_clauses(q, l1, l2);
  std::array<long, 3> ids{};
  for (int k = 0; k < 3; ++k) ids[k] = push(ResLine::extend_clause(0, d, k, cl[k]));
  return ids;
}

long derive_by_dpll(ResolutionWriter& w, const std::vector<long>& pool, const Clause& target,
                    const std::unordered_map<long, std::size_t>& fresh_input) {
  // value: 1 true, -1 false, 0 unassigned
  std::unordered_map<std::uint32_t, int> value;
  std::vector<Atom> order;
  std::unordered_map<std::uint32_t, bool> listed;
  for (long id : pool)
    for (Literal l : w.clause(id))
      if (!listed[l.atom.id()]) {
        listed[l.atom.id()] = true;
        order.push_back(l.atom);
      }
  for (Literal l : target) value[l.atom.id()] = l.positive ? -1 : 1;

  auto lit_value = [&](Literal l) {
    auto it = value.find(l.atom.id());
    if (it == value.end() || it->second == 0) return 0;
    return (it->second == 1) == l.positive ? 1 : -1;
  };
  auto emit = [&](long id) {
    auto it = fresh_input.find(id);
    return it == fresh_input.end() ? id : w.input(it->second, w.clause(id));
  };

  std::function<long()> refute = [&]() -> long {
    const Atom* branch = nullptr;
    Literal unit_lit{};
    bool have_unit = false;
    for (long id : pool) {
      int open = 0;
      bool sat = false;
      Literal last{};
      for (Literal l : w.clause(id)) {
        int v = lit_value(l);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v == 0) {
          ++open;
          last = l;
        }
      }
      if (sat) continue;
      if (open == 0) return emit(id);
      if (open == 1 && !have_unit) {
        have_unit = true;
        unit_lit = last;
      }
    }
    Atom x;
    if (have_unit) {
      x = unit_lit.atom;
    } else {
      for (const Atom& a : order)
        if (lit_value(Literal{a, true}) == 0) {
          branch = &a;
          break;
        }
      if (!branch) throw std::logic_error("derive_by_dpll: assignment satisfies the pool");
      x = *branch;
    }
    // try the value that falsifies the unit literal first: it closes at once
    bool first = have_unit ? !unit_lit.positive : true;
    long r1, r2;
    value[x.id()] = first ? 1 : -1;
    r1 = refute();
    if (!w.clause(r1).contains(Literal{x, !first})) {
      value[x.id()] = 0;
      return r1;
    }
    value[x.id()] = first ? -1 : 1;
    r2 = refute();
    value[x.id()] = 0;
    if (!w.clause(r2).contains(Literal{x, first})) return r2;
    return w.resolve(r1, r2, x);
  };
  return refute();
}

ResolutionProof dpll_refutation(const CnfFormula& cnf) {
  ResolutionWriter w;
  std::vector<long> pool;
  std::unordered_map<long, std::size_t> fresh;
  // placeholder inputs, re-emitted per use and dropped afterwards
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i) {
    long id = w.input(i + 1, cnf.clauses[i]);
    pool.push_back(id);
    fresh[id] = i + 1;
  }
  derive_by_dpll(w, pool, Clause{}, fresh);
  ResolutionProof all = w.take();
  std::unordered_map<long, long> renum;
  ResolutionProof out;
  long next = 1;
  std::size_t placeholders = cnf.clauses.size();
  for (std::size_t k = 0; k < all.lines.size(); ++k) {
    ResLine l = all.lines[k];
    if (k < placeholders) continue;
    renum[l.id] = next;
    l.id = next++;
    if (l.kind == ResKind::Resolve) {
      l.p1 = renum.at(l.p1);
      l.p2 = renum.at(l.p2);
    }
    out.lines.push_back(std::move(l));
  }
  return out;
}

}  // namespace pcw
