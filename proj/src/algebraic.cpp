#include "pcw/algebraic.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace pcw {

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Atom x, Atom y) { return x.name() < y.name(); });
}

Polynomial Polynomial::constant(std::int64_t c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::var(Atom a) {
  Polynomial p;
  p.add_term({a}, 1);
  return p;
}

void Polynomial::add_term(Monomial m, std::int64_t c) {
  std::sort(m.begin(), m.end(), [](Atom x, Atom y) { return x.name() < y.name(); });
  m.erase(std::unique(m.begin(), m.end()), m.end());
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else if ((it->second += c) == 0) {
    terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      r.add_term(std::move(m), c1 * c2);
    }
  return r;
}

std::int64_t Polynomial::evaluate(const Assignment& a) const {
  std::int64_t v = 0;
  for (const auto& [m, c] : terms_) {
    bool on = std::all_of(m.begin(), m.end(), [&](Atom x) {
      auto it = a.find(x.id());
      return it != a.end() && it->second;
    });
    if (on) v += c;
  }
  return v;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(c);
    for (Atom a : m) out += "*" + a.name();
  }
  return out;
}

PolynomialSystem encode_poly_system(const CnfFormula& cnf) {
  PolynomialSystem s;
  s.atoms = cnf.atoms;
  for (const Clause& c : cnf.clauses) {
    Polynomial p = Polynomial::constant(1);
    for (Literal l : c)
      p = p * (l.positive ? Polynomial::constant(1) - Polynomial::var(l.atom) : Polynomial::var(l.atom));
    s.equations.push_back({p, std::nullopt});
  }
  for (Atom a : cnf.atoms) {
    Polynomial x = Polynomial::var(a);
    s.equations.push_back({x * x - x, a});
  }
  return s;
}

LinearSystem encode_linear_system(const CnfFormula& cnf) {
  LinearSystem s;
  s.atoms = cnf.atoms;
  for (const Clause& c : cnf.clauses) {
    LinearConstraint k;
    k.bound = 1;
    std::vector<std::pair<Atom, std::int64_t>> acc;
    for (Literal l : c) {
      if (!l.positive) --k.bound;
      auto it = std::find_if(acc.begin(), acc.end(), [&](auto& e) { return e.first == l.atom; });
      if (it == acc.end()) it = acc.insert(acc.end(), {l.atom, 0});
      it->second += l.positive ? 1 : -1;
    }
    for (auto& e : acc)
      if (e.second != 0) k.coeffs.push_back(e);
    s.constraints.push_back(std::move(k));
  }
  return s;
}

namespace {

// Runs pred over all assignments of n atoms, split across threads.
template <class Pred>
bool exists_assignment(std::size_t n, std::size_t limit, const Pred& pred) {
  if (n > limit)
    throw TooManyAtomsError(std::to_string(n) + " atoms exceed the enumeration limit of " + std::to_string(limit));
  std::uint64_t total = 1ull << n;
  unsigned workers = total < 4096 ? 1u : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<bool> found{false};
  auto run = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t b = lo; b < hi && !found.load(std::memory_order_relaxed); ++b)
      if (pred(b)) found = true;
  };
  if (workers == 1) {
    run(0, total);
  } else {
    std::vector<std::thread> ts;
    std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) ts.emplace_back(run, w * chunk, std::min(total, (w + 1) * chunk));
    for (auto& t : ts) t.join();
  }
  return found;
}

std::unordered_map<std::uint32_t, std::size_t> index_atoms(const std::vector<Atom>& atoms) {
  std::unordered_map<std::uint32_t, std::size_t> idx;
  for (std::size_t i = 0; i < atoms.size(); ++i) idx.emplace(atoms[i].id(), i);
  return idx;
}

std::size_t slot(const std::unordered_map<std::uint32_t, std::size_t>& idx, Atom a) {
  auto it = idx.find(a.id());
  if (it == idx.end()) throw MissingAtomError("atom '" + a.name() + "' is not declared");
  return it->second;
}

}  // namespace

bool solvable_01(const PolynomialSystem& s, std::size_t atom_limit) {
  auto idx = index_atoms(s.atoms);
  std::vector<std::vector<std::pair<std::uint64_t, std::int64_t>>> eqs;
  for (const PolyEquation& e : s.equations) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> terms;
    for (const auto& [m, c] : e.poly.terms()) {
      std::uint64_t mask = 0;
      for (Atom a : m) mask |= 1ull << slot(idx, a);
      terms.emplace_back(mask, c);
    }
    eqs.push_back(std::move(terms));
  }
  return exists_assignment(s.atoms.size(), atom_limit, [&](std::uint64_t b) {
    for (const auto& terms : eqs) {
      std::int64_t v = 0;
      for (auto [mask, c] : terms)
        if ((b & mask) == mask) v += c;
      if (v != 0) return false;
    }
    return true;
  });
}

bool solvable_01(const LinearSystem& s, std::size_t atom_limit) {
  auto idx = index_atoms(s.atoms);
  std::vector<std::pair<std::vector<std::pair<std::size_t, std::int64_t>>, std::int64_t>> cons;
  for (const LinearConstraint& k : s.constraints) {
    std::vector<std::pair<std::size_t, std::int64_t>> cs;
    for (auto [a, c] : k.coeffs) cs.emplace_back(slot(idx, a), c);
    cons.emplace_back(std::move(cs), k.bound);
  }
  return exists_assignment(s.atoms.size(), atom_limit, [&](std::uint64_t b) {
    for (const auto& [cs, bound] : cons) {
      std::int64_t v = 0;
      for (auto [i, c] : cs)
        if ((b >> i) & 1) v += c;
      if (v < bound) return false;
    }
    return true;
  });
}

// ---------------------------------------------------------------------------
// text

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::size_t at) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(at, "bad integer '" + std::string(s) + "'");
  return v;
}

Atom parse_atom(std::string_view s, std::size_t at) {
  if (!is_user_atom_name(s)) throw ParseError(at, "malformed atom '" + std::string(s) + "'");
  return Atom(s);
}

// `<coef>*a*b + <coef> ...`; calls term(coef, atoms) per summand
template <class F>
void parse_sum(std::string_view s, std::size_t at, const F& term) {
  s = trim(s);
  if (s.empty()) throw ParseError(at, "empty side");
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    std::string_view t = trim(s.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos));
    std::size_t star = t.find('*');
    std::int64_t c = parse_int(trim(t.substr(0, star)), at);
    std::vector<Atom> atoms;
    while (star != std::string_view::npos) {
      std::size_t next = t.find('*', star + 1);
      atoms.push_back(parse_atom(trim(t.substr(star + 1, next == std::string_view::npos ? next : next - star - 1)), at));
      star = next;
    }
    term(c, std::move(atoms));
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
}

template <class F>
void for_lines(std::string_view text, const F& f) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    if (!line.empty() && line[0] != '#') f(line, pos);
    pos = nl + 1;
  }
}

void note_atom(std::vector<Atom>& atoms, Atom a) {
  if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
}

}  // namespace

std::string write_poly_system(const PolynomialSystem& s) {
  std::ostringstream out;
  for (const PolyEquation& e : s.equations) {
    if (e.reduced) {
      const std::string& x = e.reduced->name();
      out << "1*" << x << "*" << x << " + -1*" << x << " = 0 reduced\n";
    } else {
      out << e.poly.to_string() << " = 0\n";
    }
  }
  return out.str();
}

PolynomialSystem parse_poly_system(std::string_view text) {
  PolynomialSystem s;
  for_lines(text, [&](std::string_view line, std::size_t at) {
    bool reduced = false;
    if (line.size() >= 8 && line.substr(line.size() - 8) == " reduced") {
      reduced = true;
      line = trim(line.substr(0, line.size() - 8));
    }
    std::size_t eq = line.rfind('=');
    if (eq == std::string_view::npos || trim(line.substr(eq + 1)) != "0") throw ParseError(at, "expected `= 0`");
    PolyEquation e;
    std::vector<Atom> seen;
    parse_sum(line.substr(0, eq), at, [&](std::int64_t c, std::vector<Atom> atoms) {
      for (Atom a : atoms) {
        note_atom(s.atoms, a);
        note_atom(seen, a);
      }
      e.poly.add_term(std::move(atoms), c);
    });
    if (reduced) {
      if (seen.size() != 1 || !e.poly.is_zero()) throw ParseError(at, "`reduced` marks only x*x - x");
      e.reduced = seen[0];
    }
    s.equations.push_back(std::move(e));
  });
  return s;
}

std::string write_linear_system(const LinearSystem& s) {
  std::ostringstream out;
  for (const LinearConstraint& k : s.constraints) {
    if (k.coeffs.empty()) out << '0';
    for (std::size_t i = 0; i < k.coeffs.size(); ++i)
      out << (i ? " + " : "") << k.coeffs[i].second << '*' << k.coeffs[i].first.name();
    out << " >= " << k.bound << '\n';
  }
  out << "bounds 0 1\n";
  for (std::size_t i = 0; i < s.atoms.size(); ++i) out << (i ? " " : "") << s.atoms[i].name();
  out << '\n';
  return out.str();
}

LinearSystem parse_linear_system(std::string_view text) {
  LinearSystem s;
  int state = 0;  // 0 constraints, 1 after `bounds 0 1`, 2 done
  for_lines(text, [&](std::string_view line, std::size_t at) {
    if (state == 0 && line == "bounds 0 1") {
      state = 1;
      return;
    }
    if (state == 1) {
      std::size_t pos = 0;
      while (pos < line.size()) {
        std::size_t sp = line.find(' ', pos);
        if (sp == std::string_view::npos) sp = line.size();
        if (sp > pos) note_atom(s.atoms, parse_atom(line.substr(pos, sp - pos), at));
        pos = sp + 1;
      }
      state = 2;
      return;
    }
    if (state == 2) throw ParseError(at, "text after the bounds section");
    std::size_t ge = line.find(">=");
    if (ge == std::string_view::npos) throw ParseError(at, "expected `>=`");
    LinearConstraint k;
    k.bound = parse_int(trim(line.substr(ge + 2)), at);
    parse_sum(line.substr(0, ge), at, [&](std::int64_t c, std::vector<Atom> atoms) {
      if (atoms.size() > 1) throw ParseError(at, "nonlinear term");
      if (atoms.empty()) {
        k.bound -= c;
        return;
      }
      if (c != 0) k.coeffs.emplace_back(atoms[0], c);
    });
    s.constraints.push_back(std::move(k));
  });
  if (state == 0) throw ParseError(text.size(), "missing bounds section");
  for (const LinearConstraint& k : s.constraints)
    for (auto [a, c] : k.coeffs)
      if (std::find(s.atoms.begin(), s.atoms.end(), a) == s.atoms.end())
        throw MissingAtomError("atom '" + a.name() + "' has no bounds");
  return s;
}

}  // namespace pcw
