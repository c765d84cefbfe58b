#include <bit>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "pcw/resolution_tools.hpp"
#include "pcw/workbench.hpp"

namespace pcw {

std::string MinResResult::to_string() const {
  if (!exceeded) return std::to_string(steps);
  return "BUDGET_EXCEEDED lower=" + std::to_string(lower_bound) + " upper=" + std::to_string(upper_bound);
}

namespace {

struct Bits {
  std::uint64_t pos = 0, neg = 0;
  int width() const { return std::popcount(pos) + std::popcount(neg); }
  bool subsumes(const Bits& o) const { return (pos & ~o.pos) == 0 && (neg & ~o.neg) == 0; }
  friend bool operator<(const Bits& a, const Bits& b) { return a.pos != b.pos ? a.pos < b.pos : a.neg < b.neg; }
  friend bool operator==(const Bits& a, const Bits& b) { return a.pos == b.pos && a.neg == b.neg; }
};

struct Key {
  Bits a, b;  // a <= b
  friend bool operator<(const Key& x, const Key& y) {
    if (!(x.a == y.a)) return x.a < y.a;
    return x.b < y.b;
  }
};

struct BudgetHit {};

class Search {
public:
  Search(std::vector<Bits> inputs, double seconds)
      : cls_(std::move(inputs)), used_(cls_.size(), true),
        deadline_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds))) {}

  // true when a refutation with at most k more steps exists
  bool run(std::size_t k) {
    std::optional<Key> none;
    return dfs(k, none, cls_.size());
  }

private:
  bool dfs(std::size_t k, const std::optional<Key>& last_key, std::size_t last_idx) {
    if ((++nodes_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) throw BudgetHit{};
    if (k == 0) return false;
    std::size_t unused = 0;
    int minw = 64;
    for (std::size_t i = 0; i < cls_.size(); ++i) {
      if (!used_[i]) ++unused;
      minw = std::min(minw, cls_[i].width());
    }
    if (unused > k + 1 || static_cast<std::size_t>(minw) > k) return false;

    // failed states: derived clauses with their used flags, last step and remaining depth
    std::vector<std::array<std::uint64_t, 3>> derived;
    for (std::size_t i = inputs_; i < cls_.size(); ++i) derived.push_back({cls_[i].pos, cls_[i].neg, used_[i]});
    std::sort(derived.begin(), derived.end());
    std::vector<std::uint64_t> sig;
    for (const auto& d : derived) sig.insert(sig.end(), d.begin(), d.end());
    sig.push_back(k);
    if (last_key) {
      sig.insert(sig.end(), {last_key->a.pos, last_key->a.neg, last_key->b.pos, last_key->b.neg});
    }
    if (last_idx < cls_.size()) sig.insert(sig.end(), {cls_[last_idx].pos, cls_[last_idx].neg});
    if (failed_.count(sig)) return false;

    std::size_t n = cls_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Bits& a = cls_[i];
        const Bits& b = cls_[j];
        std::uint64_t clash = (a.pos & b.neg) | (a.neg & b.pos);
        if (std::popcount(clash) != 1) continue;
        Bits r{(a.pos | b.pos) & ~clash, (a.neg | b.neg) & ~clash};
        Key key = b < a ? Key{b, a} : Key{a, b};
        bool follows = i == last_idx || j == last_idx;
        if (!follows && last_key && !(*last_key < key)) continue;
        if (r.pos == 0 && r.neg == 0) return true;
        if (k == 1) continue;
        bool subsumed = false;
        for (const Bits& c : cls_)
          if (c.subsumes(r)) {
            subsumed = true;
            break;
          }
        if (subsumed) continue;
        bool ui = used_[i], uj = used_[j];
        used_[i] = used_[j] = true;
        cls_.push_back(r);
        used_.push_back(false);
        bool ok = dfs(k - 1, key, n);
        cls_.pop_back();
        used_.pop_back();
        used_[i] = ui;
        used_[j] = uj;
        if (ok) return true;
      }
    if (failed_.size() < 4'000'000) failed_.insert(std::move(sig));
    return false;
  }

  struct SigHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
      std::size_t h = v.size();
      for (std::uint64_t x : v) h = (h ^ x) * 0x100000001b3ull + (h >> 29);
      return h;
    }
  };

  std::vector<Bits> cls_;
  std::size_t inputs_ = cls_.size();
  std::unordered_set<std::vector<std::uint64_t>, SigHash> failed_;
  std::vector<bool> used_;  // inputs count as used: they need no consumer
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MinResResult min_resolution_steps(const CnfFormula& cnf, const SearchBudget& budget) {
  if (cnf.atoms.size() > 64) throw std::invalid_argument("minimal search supports at most 64 atoms");
  std::unordered_map<std::uint32_t, int> idx;
  for (std::size_t i = 0; i < cnf.atoms.size(); ++i) idx[cnf.atoms[i].id()] = static_cast<int>(i);
  std::vector<Bits> inputs;
  for (const Clause& c : cnf.clauses) {
    Bits b;
    for (Literal l : c) (l.positive ? b.pos : b.neg) |= 1ull << idx.at(l.atom.id());
    if ((b.pos & b.neg) != 0) continue;  // tautologies never help
    inputs.push_back(b);
  }

  MinResResult res;
  for (const Bits& b : inputs)
    if (b.pos == 0 && b.neg == 0) return res;  // empty input clause: zero steps

  ResolutionProof known;
  try {
    known = dpll_refutation(cnf);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("CNF is satisfiable");
  }
  for (const ResLine& l : known.lines) res.upper_bound += l.kind == ResKind::Resolve;

  Search search(inputs, budget.max_seconds);
  std::size_t limit = std::min(budget.max_lines, res.upper_bound);
  try {
    for (std::size_t k = 1; k <= limit; ++k) {
      res.lower_bound = k;
      if (search.run(k)) {
        res.steps = k;
        res.upper_bound = k;
        return res;
      }
    }
  } catch (const BudgetHit&) {
    res.exceeded = true;
    return res;
  }
  if (limit == res.upper_bound) {
    res.steps = res.upper_bound;
    res.lower_bound = res.upper_bound;
    return res;
  }
  res.exceeded = true;
  res.lower_bound = limit + 1;
  return res;
}

}  // namespace pcw
