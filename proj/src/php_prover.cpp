#include "pcw/php_prover.hpp"

#include <map>
#include <tuple>

#include "pcw/generators.hpp"
#include "pcw/proof_builder.hpp"

namespace pcw {

namespace {

Formula neg(Formula f) { return Formula::negation(f); }

std::vector<Formula> cat(std::vector<Formula> a, const std::vector<Formula>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Lines of one level: pigeon clauses and hole clauses, each prefixed by the head.
struct Level {
  int k = 0;                                   // pigeons; holes are k - 1
  std::vector<std::vector<Formula>> atom;      // atom[i][j], 1-based
  std::vector<long> pigeon;                    // pigeon[i]
  std::map<std::tuple<int, int, int>, long> hole;  // (j, i1, i2), i1 < i2
};

class PhpBuilder {
public:
  PhpBuilder(int n, bool functionality) : n_(n), func_(functionality), pb_(FregeVariant::EF) {}

  PhpProofArtifacts run() {
    CnfFormula cnf = php_cnf(n_, n_ - 1, func_);
    std::vector<Formula> leaves;
    for (const Clause& c : cnf.clauses) leaves.push_back(negated_clause_formula(c));
    DisjunctionContext ctx(pb_, leaves, n_ >= 4, "e_h");
    h_ = ctx.head();

    Level top;
    top.k = n_;
    top.atom.assign(n_ + 1, std::vector<Formula>(n_, Formula::zero()));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j < n_; ++j) top.atom[i][j] = Formula::var(php_atom(i, j));
    top.pigeon.assign(n_ + 1, 0);

    std::size_t idx = 0;
    auto input = [&](const Clause& expect) {
      const Clause& c = cnf.clauses.at(idx);
      if (!(c == expect)) throw std::logic_error("unexpected clause order in the pigeonhole CNF");
      std::vector<Formula> lits;
      for (Literal l : c) lits.push_back(literal_formula(l));
      long lem = pb_.clause_lemma(c);
      long line = pb_.restructure(lem, cat({leaves[idx]}, lits), cat({h_}, lits),
                                  LemmaMap{{leaves[idx], ctx.leaf_to_head(idx)}});
      ++idx;
      return line;
    };
    for (int i = 1; i <= n_; ++i) {
      std::vector<Literal> lits;
      for (int j = 1; j < n_; ++j) lits.push_back({php_atom(i, j), true});
      top.pigeon[i] = input(Clause(lits));
    }
    for (int j = 1; j < n_; ++j)
      for (int i1 = 1; i1 <= n_; ++i1)
        for (int i2 = i1 + 1; i2 <= n_; ++i2)
          top.hole[{j, i1, i2}] = input(Clause{{php_atom(i1, j), false}, {php_atom(i2, j), false}});

    Level cur = std::move(top);
    while (cur.k > 2) cur = step_down(cur);

    Formula a11 = cur.atom[1][1], a21 = cur.atom[2][1];
    long hl = cur.hole.at({1, 1, 2});
    long r1 = pb_.resolve(cur.pigeon[1], {h_, a11}, hl, {h_, neg(a11), neg(a21)}, a11, {h_, neg(a21)});
    long r2 = pb_.resolve(cur.pigeon[2], {h_, a21}, r1, {h_, neg(a21)}, a21, {h_});
    long fin = pb_.restate(ctx.unfold(r2));
    if (pb_.formula(fin) != php_formula(n_, n_ - 1, func_) || fin != pb_.last())
      throw std::logic_error("pigeonhole proof ended at the wrong formula: " + render_formula(pb_.formula(fin)) + " line " + std::to_string(fin) + " of " + std::to_string(pb_.last()));

    PhpProofArtifacts out;
    out.n = n_;
    out.functionality = func_;
    out.ext_atoms = ctx.atoms();
    out.ext_atoms.insert(out.ext_atoms.end(), level_atoms_.begin(), level_atoms_.end());
    out.proof = pb_.take();
    out.steps = out.proof.lines.size();
    for (const HilLine& l : out.proof.lines) out.symbols += l.formula.size();
    return out;
  }

private:
  struct Def {
    Formula b, x, y, z;
    long fwd = 0, bwd = 0;
    long a_to_b = 0, zyb = 0, d1 = 0, d2 = 0;
  };

  Level step_down(const Level& L) {
    const int k = L.k;
    Level N;
    N.k = k - 1;
    N.atom.assign(k, std::vector<Formula>(k - 1, Formula::zero()));
    N.pigeon.assign(k, 0);
    std::map<std::pair<int, int>, Def> defs;
    for (int i = 1; i <= k - 1; ++i)
      for (int j = 1; j <= k - 2; ++j) {
        Atom q("e_q" + std::to_string(k - 1) + "_" + std::to_string(i) + "_" + std::to_string(j));
        level_atoms_.push_back(q);
        Def d;
        d.b = Formula::var(q);
        d.x = L.atom[i][j];
        d.y = L.atom[i][k - 1];
        d.z = L.atom[k][j];
        Formula yz = Formula::conj(d.y, d.z);
        long e = pb_.ext(q, Formula::disj(d.x, yz));
        d.fwd = pb_.and_elim(e, true);
        d.bwd = pb_.and_elim(e, false);
        d.a_to_b = pb_.trans(pb_.ax(6, {d.x, yz}), d.bwd);
        d.zyb = pb_.exchange(pb_.curry(pb_.trans(pb_.ax(7, {d.x, yz}), d.bwd)));
        std::vector<Formula> fitems{neg(d.b), d.x, yz};
        d.d1 = pb_.restructure(d.fwd, fitems, {neg(d.b), d.x, d.y}, LemmaMap{{yz, pb_.ax(3, {d.y, d.z})}});
        d.d2 = pb_.restructure(d.fwd, fitems, {neg(d.b), d.x, d.z}, LemmaMap{{yz, pb_.ax(4, {d.y, d.z})}});
        N.atom[i][j] = d.b;
        defs.emplace(std::make_pair(i, j), d);
      }

    auto pigeon_items = [&](const Level& lv, int i) {
      std::vector<Formula> v{h_};
      for (int j = 1; j < lv.k; ++j) v.push_back(lv.atom[i][j]);
      return v;
    };
    auto hole_items = [&](const Level& lv, int j, int i1, int i2) {
      return std::vector<Formula>{h_, neg(lv.atom[i1][j]), neg(lv.atom[i2][j])};
    };

    for (int i = 1; i <= k - 1; ++i) {
      Formula y = L.atom[i][k - 1];
      std::vector<Formula> bs;
      for (int j = 1; j <= k - 2; ++j) bs.push_back(N.atom[i][j]);
      std::vector<Formula> t = cat({h_, neg(y)}, bs);
      LemmaMap lem;
      for (int j = 1; j <= k - 2; ++j) {
        const Def& d = defs.at({i, j});
        lem[d.z] = pb_.restructure(d.zyb, {neg(d.z), neg(d.y), d.b}, cat({neg(d.z)}, t));
      }
      Formula zl = L.atom[k][k - 1];
      lem[zl] = pb_.restructure(L.hole.at({k - 1, i, k}), hole_items(L, k - 1, i, k), cat({neg(zl)}, t));
      long w = pb_.restructure(L.pigeon[k], pigeon_items(L, k), t, lem);

      std::vector<Formula> t2 = cat({h_}, bs);
      LemmaMap lem2;
      for (int j = 1; j <= k - 2; ++j) lem2[L.atom[i][j]] = defs.at({i, j}).a_to_b;
      lem2[y] = pb_.restructure(w, t, cat({neg(y)}, t2));
      N.pigeon[i] = pb_.restructure(L.pigeon[i], pigeon_items(L, i), t2, lem2);
    }

    for (int j = 1; j <= k - 2; ++j)
      for (int i1 = 1; i1 <= k - 1; ++i1)
        for (int i2 = i1 + 1; i2 <= k - 1; ++i2) {
          const Def& d1 = defs.at({i1, j});
          const Def& d2 = defs.at({i2, j});
          Formula z = d1.z;
          long h12 = L.hole.at({j, i1, i2});
          auto h12_items = hole_items(L, j, i1, i2);
          // b2 -> ~x1
          std::vector<Formula> t1{h_, neg(d2.b), neg(d1.x)};
          long e1 = pb_.restructure(
              d2.d2, {neg(d2.b), d2.x, z}, t1,
              LemmaMap{{d2.x, pb_.restructure(h12, h12_items, cat({neg(d2.x)}, t1))},
                       {z, pb_.restructure(L.hole.at({j, i1, k}), hole_items(L, j, i1, k), cat({neg(z)}, t1))}});
          // b1 -> ~x2
          std::vector<Formula> t2{h_, neg(d1.b), neg(d2.x)};
          long e2 = pb_.restructure(
              d1.d2, {neg(d1.b), d1.x, z}, t2,
              LemmaMap{{d1.x, pb_.restructure(h12, h12_items, cat({neg(d1.x)}, t2))},
                       {z, pb_.restructure(L.hole.at({j, i2, k}), hole_items(L, j, i2, k), cat({neg(z)}, t2))}});
          std::vector<Formula> t{h_, neg(d1.b), neg(d2.b)};
          std::vector<Formula> ty1 = cat({neg(d1.y)}, t);
          long x1_t = pb_.restructure(e1, t1, cat({neg(d1.x)}, t));
          long x2_ty1 = pb_.restructure(e2, t2, cat({neg(d2.x)}, ty1));
          long y2_ty1 = pb_.restructure(L.hole.at({k - 1, i1, i2}), hole_items(L, k - 1, i1, i2),
                                        cat({neg(d2.y)}, ty1));
          long y1_t = pb_.restructure(d2.d1, {neg(d2.b), d2.x, d2.y}, ty1,
                                      LemmaMap{{d2.x, x2_ty1}, {d2.y, y2_ty1}});
          N.hole[{j, i1, i2}] =
              pb_.restructure(d1.d1, {neg(d1.b), d1.x, d1.y}, t, LemmaMap{{d1.x, x1_t}, {d1.y, y1_t}});
        }
    return N;
  }

  int n_;
  bool func_;
  ProofBuilder pb_;
  Formula h_ = Formula::zero();
  std::vector<Atom> level_atoms_;
};

}  // namespace

PhpProofArtifacts build_ef_proof_php(int n, bool functionality) {
  if (n < 2) throw ParamError("the pigeonhole proof needs n >= 2");
  return PhpBuilder(n, functionality).run();
}

std::string php_stats_line(const PhpProofArtifacts& a) {
  return "n=" + std::to_string(a.n) + " steps=" + std::to_string(a.steps) + " symbols=" + std::to_string(a.symbols) +
         " ext_atoms=" + std::to_string(a.ext_atoms.size());
}

}  // namespace pcw
