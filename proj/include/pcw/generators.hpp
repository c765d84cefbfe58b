#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcw/cnf.hpp"
#include "pcw/formula.hpp"

namespace pcw {

class ParamError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class DegreeLimitError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class TooManyInputsError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Pigeonhole

enum class PhpForm { CnfContradiction, DnfTautology };

struct PhpParams {
  int pigeons = 2;
  int holes = 1;
  bool functionality = false;
  PhpForm form = PhpForm::CnfContradiction;
};

/// Atom `p_<i>_<j>`: pigeon i sits in hole j (1-based).
Atom php_atom(int pigeon, int hole);

/// Clauses in order: pigeon clauses, then hole pairs per hole, then functionality pairs per pigeon.
///
/// Requires pigeons >= 2 and holes >= 1; pigeons <= holes is allowed and yields a satisfiable CNF.
CnfFormula php_cnf(int pigeons, int holes, bool functionality);

/// The DNF tautology: dnf_negation of php_cnf. Requires pigeons > holes.
Formula php_formula(int pigeons, int holes, bool functionality);

/// Returns php_cnf or php_formula per params.form, wrapped in a variant-like struct.
struct PhpInstance {
  PhpForm form;
  CnfFormula cnf;
  Formula formula;
};
PhpInstance gen_php(const PhpParams& params);

// ---------------------------------------------------------------------------
// Tseitin parity formulas

struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  void validate() const;
  std::size_t degree(const std::string& v) const;
};

using ChargeVector = std::map<std::string, bool>;

inline constexpr std::size_t kDefaultDegreeLimit = 6;

/// Atom `s_<k>` for edge k (1-based); per vertex, all 2^(deg-1) parity-violating assignments are excluded.
CnfFormula gen_tseitin(const Graph& g, const ChargeVector& charges, std::size_t degree_limit = kDefaultDegreeLimit);

struct GraphInstance {
  Graph graph;
  ChargeVector charges;
};
/// Line format: `vertex <name>`, `edge <a> <b>`, `charge <name> <0|1>`, `#` comments.
GraphInstance parse_graph(std::string_view text);
std::string write_graph(const GraphInstance& g);

// ---------------------------------------------------------------------------
// Circuits and the range-avoidance tautologies

enum class GateOp { And, Or, Not, Xor, Const0, Const1 };

struct Gate {
  std::string id;
  GateOp op;
  std::vector<std::string> args;
};

/// Inputs are referred to as `x1 .. xn`; gate ids match `[a-z0-9_]+` and are not of that form.
struct Circuit {
  int inputs = 0;
  std::vector<Gate> gates;
  std::vector<std::string> outputs;

  void validate() const;
};

/// Line format: `inputs <n>`, `gate <id> <OP> <arg>...` in topological order, `outputs <id>...`.
Circuit parse_circuit(std::string_view text);
std::string write_circuit(const Circuit& c);

inline constexpr int kDefaultRangeInputs = 16;

std::vector<bool> eval_circuit(const Circuit& c, const std::vector<bool>& input);
/// Outputs as bit strings of length 2n, enumerated over all 2^n inputs.
std::set<std::string> circuit_range(const Circuit& c, int input_limit = kDefaultRangeInputs);

struct TauInstance {
  Circuit circuit;
  std::string target;
};

/// Gate consistency and output-equals-target clauses over atoms `x_<k>` and `y_<gid>`.
CnfFormula tau_cnf(const TauInstance& t);
/// The DNF negation of tau_cnf: a tautology iff target is outside the circuit's range.
Formula gen_tau(const TauInstance& t);

}  // namespace pcw
