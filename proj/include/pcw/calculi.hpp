#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcw/cnf.hpp"
#include "pcw/formula.hpp"

namespace pcw {

enum class RejectReason {
  None,
  BadPivot,
  UnknownId,
  NotEmptyFinal,
  ReuseInTree,
  ExtendForbidden,
  ExtNotFresh,
  BadResolvent,
  BadInput,
  BadExtend,
  BadAxiomInstance,
  BadMp,
  ExtInConclusion,
  SubForbidden,
  ExtForbidden,
  UnknownScheme,
  BadExtForm,
  BadSub,
  EmptyProof,
  BadId,
};

/// Upper-case wire name, e.g. `BAD_PIVOT`.
std::string to_string(RejectReason r);

struct CheckReport {
  bool accepted = false;
  long line_id = 0;  // offending line on reject
  RejectReason reason = RejectReason::None;
  std::string detail;
  bool empty_clause = false;  // refutation systems conclude with the empty clause
  std::optional<Formula> conclusion;
  std::uint64_t steps = 0;
  std::uint64_t symbols = 0;

  /// `ACCEPT` or `REJECT <line> <REASON>`.
  std::string verdict_line() const;
};

// ---------------------------------------------------------------------------
// Resolution and extended resolution

enum class ResKind { Input, Resolve, ExtendDef, ExtendClause };

struct ResLine {
  long id = 0;
  ResKind kind = ResKind::Input;
  Clause clause;
  std::size_t input_index = 0;  // 1-based clause index of the CNF
  long p1 = 0, p2 = 0;          // Resolve: p1 holds the pivot positively
  Atom pivot;
  Atom ext_atom;                // ExtendDef
  Literal l1, l2;               // ExtendDef: ext_atom == l1 or l2
  long def_id = 0;              // ExtendClause
  int part = 0;                 // ExtendClause: 0 {~q,l1,l2}, 1 {q,~l1}, 2 {q,~l2}

  static ResLine input(long id, std::size_t index, Clause c);
  static ResLine resolve(long id, long p1, long p2, Atom pivot, Clause c);
  static ResLine extend_def(long id, Atom q, Literal l1, Literal l2);
  static ResLine extend_clause(long id, long def_id, int part, Clause c);
};

struct ResolutionProof {
  std::vector<ResLine> lines;
};

/// The three definition clauses of q == l1 or l2, in order.
std::vector<Clause> extension_clauses(Atom q, Literal l1, Literal l2);

CheckReport check_resolution(const CnfFormula& cnf, const ResolutionProof& proof, bool tree_like = false);
CheckReport check_extended_resolution(const CnfFormula& cnf, const ResolutionProof& proof);

/// Steps and symbols of a resolution-family proof without checking it.
void measure_resolution(const ResolutionProof& proof, std::uint64_t& steps, std::uint64_t& symbols);

enum class ResSystem { Res, ER };

struct ResolutionDocument {
  ResSystem system = ResSystem::Res;
  std::string cnf_path;  // "-" when inline
  CnfFormula cnf;
  ResolutionProof proof;
};

/// Text format:
///   system RES|ER
///   cnf <path>            (relative to base_dir) or `cnf -` followed by `begin cnf` ... `end cnf`
///   <id> <lits> 0 i<k> 0             input clause k
///   <id> <lits> 0 <a> <b> 0          resolvent; pivot positive in a, negative in b
///   <id> e <index> <lit1> <lit2>     extension declaration, followed by its three clause lines
///   <id> <lits> 0 <def-id> 0         extension clause
///   c atom <index> <name>            name for an index above the CNF atoms; an index named
///                                    but never declared by `e` is a free atom outside the CNF
/// Literals are signed 1-based atom indices; CNF atoms come first.
ResolutionDocument parse_resolution(std::string_view text, const std::string& base_dir = ".");
/// Writes with the CNF inline unless cnf_path is set to something other than "-".
std::string write_resolution(const ResolutionDocument& doc);

// ---------------------------------------------------------------------------
// Frege family

enum class FregeVariant { F, EF, SF };
std::string to_string(FregeVariant v);

inline constexpr int kSchemeCount = 12;
/// Scheme A<k> for k in 1..12 over pattern atoms P, Q, R.
Formula frege_scheme(int k);

enum class HilKind { Ax, Mp, Ext, Sub };

struct HilLine {
  long id = 0;
  Formula formula = Formula::one();
  HilKind kind = HilKind::Ax;
  int scheme = 0;
  Substitution subst;  // Ax and Sub
  long p1 = 0, p2 = 0; // Mp: p1 is the implication, p2 its antecedent; Sub: p1
  Atom ext_atom;
};

struct HilbertProof {
  FregeVariant variant = FregeVariant::F;
  std::vector<HilLine> lines;
};

CheckReport check_frege_family(const HilbertProof& proof);

/// Header `system F|EF|SF`, then `<id> | <sexp> | AX A<k> {P=..}` / `MP i j` / `EXT q` / `SUB i {p=..}`.
HilbertProof parse_hilbert(std::string_view text);
std::string write_hilbert(const HilbertProof& proof);

// ---------------------------------------------------------------------------

enum class Calculus { Res, TreeRes, ER, F, EF, SF };
std::optional<Calculus> parse_calculus(std::string_view name);
std::string to_string(Calculus c);

/// Conclusion of w as a proof in the given system; constant 1 when w is not one.
Formula as_function(Calculus system, std::string_view w, const std::string& base_dir = ".");

}  // namespace pcw
