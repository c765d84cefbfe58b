#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcw/cnf.hpp"

namespace pcw {

/// Atoms of a monomial, sorted by name; the empty monomial is the constant 1.
using Monomial = std::vector<Atom>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multilinear polynomial with integer coefficients: x*x is reduced to x.
class Polynomial {
public:
  Polynomial() = default;
  static Polynomial constant(std::int64_t c);
  static Polynomial var(Atom a);

  const std::map<Monomial, std::int64_t, MonomialLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(Monomial m, std::int64_t c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  std::int64_t evaluate(const Assignment& a) const;
  /// `<coef>*a*b + <coef>` with `0` for the zero polynomial.
  std::string to_string() const;

private:
  std::map<Monomial, std::int64_t, MonomialLess> terms_;
};

struct PolyEquation {
  Polynomial poly;                // asserted = 0
  std::optional<Atom> reduced;    // x*x - x, already zero in normal form
};

struct PolynomialSystem {
  std::vector<Atom> atoms;
  std::vector<PolyEquation> equations;
};

/// One equation per clause (product of 1-x for positive and x for negative
/// literals), then x*x - x = 0 per atom.
PolynomialSystem encode_poly_system(const CnfFormula& cnf);

struct LinearConstraint {
  std::vector<std::pair<Atom, std::int64_t>> coeffs;  // sum >= bound
  std::int64_t bound = 0;
};

/// Constraints plus 0 <= x <= 1 for every atom.
struct LinearSystem {
  std::vector<Atom> atoms;
  std::vector<LinearConstraint> constraints;
  std::size_t constraint_count() const { return constraints.size() + 2 * atoms.size(); }
};

LinearSystem encode_linear_system(const CnfFormula& cnf);

bool solvable_01(const PolynomialSystem& s, std::size_t atom_limit = kDefaultBruteForceAtoms);
bool solvable_01(const LinearSystem& s, std::size_t atom_limit = kDefaultBruteForceAtoms);

/// `<coef>*a*b + ... = 0` per line; the x*x - x lines end with ` reduced`.
std::string write_poly_system(const PolynomialSystem& s);
PolynomialSystem parse_poly_system(std::string_view text);
/// `<coef>*<atom> + ... >= <const>` per line, then `bounds 0 1` and the atoms on one line.
std::string write_linear_system(const LinearSystem& s);
LinearSystem parse_linear_system(std::string_view text);

}  // namespace pcw
