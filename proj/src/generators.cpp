#include "pcw/generators.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace pcw {

Atom php_atom(int pigeon, int hole) {
  return Atom("p_" + std::to_string(pigeon) + "_" + std::to_string(hole));
}

CnfFormula php_cnf(int pigeons, int holes, bool functionality) {
  if (pigeons < 2 || holes < 1)
    throw ParamError("pigeonhole needs pigeons >= 2 and holes >= 1 (got " + std::to_string(pigeons) + ", " +
                     std::to_string(holes) + ")");
  std::vector<Clause> clauses;
  for (int i = 1; i <= pigeons; ++i) {
    std::vector<Literal> c;
    for (int j = 1; j <= holes; ++j) c.push_back({php_atom(i, j), true});
    clauses.emplace_back(std::move(c));
  }
  for (int j = 1; j <= holes; ++j)
    for (int i1 = 1; i1 <= pigeons; ++i1)
      for (int i2 = i1 + 1; i2 <= pigeons; ++i2)
        clauses.push_back(Clause{{php_atom(i1, j), false}, {php_atom(i2, j), false}});
  if (functionality)
    for (int i = 1; i <= pigeons; ++i)
      for (int j1 = 1; j1 <= holes; ++j1)
        for (int j2 = j1 + 1; j2 <= holes; ++j2)
          clauses.push_back(Clause{{php_atom(i, j1), false}, {php_atom(i, j2), false}});
  CnfFormula cnf;
  for (int i = 1; i <= pigeons; ++i)
    for (int j = 1; j <= holes; ++j) cnf.atoms.push_back(php_atom(i, j));
  cnf.clauses = std::move(clauses);
  return cnf;
}

Formula php_formula(int pigeons, int holes, bool functionality) {
  if (pigeons <= holes)
    throw ParamError("the pigeonhole tautology needs more pigeons than holes (got " + std::to_string(pigeons) +
                     " <= " + std::to_string(holes) + ")");
  return dnf_negation(php_cnf(pigeons, holes, functionality));
}

PhpInstance gen_php(const PhpParams& params) {
  PhpInstance inst{params.form, php_cnf(params.pigeons, params.holes, params.functionality), Formula::zero()};
  if (params.form == PhpForm::DnfTautology)
    inst.formula = php_formula(params.pigeons, params.holes, params.functionality);
  else
    inst.formula = cnf_formula(inst.cnf);
  return inst;
}

// ---------------------------------------------------------------------------

void Graph::validate() const {
  std::unordered_map<std::string, int> seen;
  for (const auto& v : vertices)
    if (!seen.emplace(v, 0).second) throw ParamError("duplicate vertex '" + v + "'");
  for (const auto& [a, b] : edges) {
    if (!seen.count(a) || !seen.count(b)) throw ParamError("edge references undeclared vertex");
    if (a == b) throw ParamError("self-loop at vertex '" + a + "'");
  }
}

std::size_t Graph::degree(const std::string& v) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const auto& e) { return e.first == v || e.second == v; }));
}

CnfFormula gen_tseitin(const Graph& g, const ChargeVector& charges, std::size_t degree_limit) {
  g.validate();
  CnfFormula cnf;
  for (std::size_t k = 0; k < g.edges.size(); ++k) cnf.atoms.emplace_back("s_" + std::to_string(k + 1));
  for (const auto& v : g.vertices) {
    auto ch = charges.find(v);
    if (ch == charges.end()) throw ParamError("no charge for vertex '" + v + "'");
    std::vector<Atom> incident;
    for (std::size_t k = 0; k < g.edges.size(); ++k)
      if (g.edges[k].first == v || g.edges[k].second == v) incident.push_back(cnf.atoms[k]);
    if (incident.size() > degree_limit)
      throw DegreeLimitError("vertex '" + v + "' has degree " + std::to_string(incident.size()) + " > " +
                             std::to_string(degree_limit));
    const std::uint64_t total = 1ULL << incident.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      bool parity = __builtin_popcountll(bits) & 1;
      if (parity == ch->second) continue;
      std::vector<Literal> c;
      for (std::size_t e = 0; e < incident.size(); ++e) c.push_back({incident[e], !((bits >> e) & 1)});
      cnf.clauses.emplace_back(std::move(c));
    }
  }
  return cnf;
}

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> w;
  std::string s;
  while (in >> s) w.push_back(s);
  return w;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(offset, nl - offset);
    std::size_t at = offset;
    offset = nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (!words.empty()) fn(words, at);
  }
}

}  // namespace

GraphInstance parse_graph(std::string_view text) {
  GraphInstance gi;
  for_each_line(text, [&](const std::vector<std::string>& w, std::size_t at) {
    if (w[0] == "vertex" && w.size() == 2) {
      gi.graph.vertices.push_back(w[1]);
    } else if (w[0] == "edge" && w.size() == 3) {
      gi.graph.edges.emplace_back(w[1], w[2]);
    } else if (w[0] == "charge" && w.size() == 3 && (w[2] == "0" || w[2] == "1")) {
      gi.charges[w[1]] = w[2] == "1";
    } else {
      throw ParseError(at, "malformed graph line starting with '" + w[0] + "'");
    }
  });
  gi.graph.validate();
  return gi;
}

std::string write_graph(const GraphInstance& g) {
  std::ostringstream out;
  for (const auto& v : g.graph.vertices) out << "vertex " << v << '\n';
  for (const auto& [a, b] : g.graph.edges) out << "edge " << a << ' ' << b << '\n';
  for (const auto& v : g.graph.vertices)
    if (auto it = g.charges.find(v); it != g.charges.end()) out << "charge " << v << ' ' << it->second << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::pair<std::string, GateOp>> kOps = {{"AND", GateOp::And},     {"OR", GateOp::Or},
                                                         {"NOT", GateOp::Not},     {"XOR", GateOp::Xor},
                                                         {"CONST0", GateOp::Const0}, {"CONST1", GateOp::Const1}};

std::size_t arity(GateOp op) {
  switch (op) {
    case GateOp::And:
    case GateOp::Or:
    case GateOp::Xor: return 2;
    case GateOp::Not: return 1;
    default: return 0;
  }
}

std::string op_name(GateOp op) {
  for (const auto& [n, o] : kOps)
    if (o == op) return n;
  return "?";
}

int input_index(const std::string& id) {
  if (id.size() < 2 || id[0] != 'x') return 0;
  if (!std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; })) return 0;
  if (id[1] == '0') return 0;
  return std::stoi(id.substr(1));
}

bool valid_gate_id(const std::string& id) {
  return !id.empty() && input_index(id) == 0 && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

void Circuit::validate() const {
  if (inputs < 1) throw ParamError("circuit needs at least one input");
  std::unordered_map<std::string, int> known;
  for (int k = 1; k <= inputs; ++k) known.emplace("x" + std::to_string(k), 0);
  for (const Gate& g : gates) {
    if (!valid_gate_id(g.id)) throw ParamError("malformed gate id '" + g.id + "'");
    if (known.count(g.id)) throw ParamError("duplicate gate id '" + g.id + "'");
    if (g.args.size() != arity(g.op))
      throw ParamError("gate '" + g.id + "' expects " + std::to_string(arity(g.op)) + " operands");
    for (const auto& a : g.args)
      if (!known.count(a)) throw ParamError("gate '" + g.id + "' references unknown or later id '" + a + "'");
    known.emplace(g.id, 0);
  }
  if (outputs.size() != 2 * static_cast<std::size_t>(inputs))
    throw ParamError("circuit must have exactly " + std::to_string(2 * inputs) + " outputs");
  for (const auto& o : outputs)
    if (!known.count(o)) throw ParamError("unknown output id '" + o + "'");
}

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_inputs = false;
  bool have_outputs = false;
  for_each_line(text, [&](const std::vector<std::string>& w, std::size_t at) {
    if (w[0] == "inputs" && w.size() == 2 && !have_inputs) {
      try {
        c.inputs = std::stoi(w[1]);
      } catch (const std::exception&) {
        throw ParseError(at, "malformed input count");
      }
      have_inputs = true;
    } else if (w[0] == "gate" && w.size() >= 3 && have_inputs && !have_outputs) {
      auto it = std::find_if(kOps.begin(), kOps.end(), [&](const auto& p) { return p.first == w[2]; });
      if (it == kOps.end()) throw ParseError(at, "unknown gate op '" + w[2] + "'");
      c.gates.push_back(Gate{w[1], it->second, std::vector<std::string>(w.begin() + 3, w.end())});
    } else if (w[0] == "outputs" && have_inputs && !have_outputs) {
      c.outputs.assign(w.begin() + 1, w.end());
      have_outputs = true;
    } else {
      throw ParseError(at, "malformed circuit line starting with '" + w[0] + "'");
    }
  });
  if (!have_inputs || !have_outputs) throw ParseError(text.size(), "circuit needs inputs and outputs lines");
  c.validate();
  return c;
}

std::string write_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "inputs " << c.inputs << '\n';
  for (const Gate& g : c.gates) {
    out << "gate " << g.id << ' ' << op_name(g.op);
    for (const auto& a : g.args) out << ' ' << a;
    out << '\n';
  }
  out << "outputs";
  for (const auto& o : c.outputs) out << ' ' << o;
  out << '\n';
  return out.str();
}

std::vector<bool> eval_circuit(const Circuit& c, const std::vector<bool>& input) {
  if (input.size() != static_cast<std::size_t>(c.inputs)) throw ParamError("input width mismatch");
  std::unordered_map<std::string, bool> val;
  for (int k = 1; k <= c.inputs; ++k) val["x" + std::to_string(k)] = input[k - 1];
  for (const Gate& g : c.gates) {
    bool v = false;
    switch (g.op) {
      case GateOp::And: v = val.at(g.args[0]) && val.at(g.args[1]); break;
      case GateOp::Or: v = val.at(g.args[0]) || val.at(g.args[1]); break;
      case GateOp::Xor: v = val.at(g.args[0]) != val.at(g.args[1]); break;
      case GateOp::Not: v = !val.at(g.args[0]); break;
      case GateOp::Const0: v = false; break;
      case GateOp::Const1: v = true; break;
    }
    val[g.id] = v;
  }
  std::vector<bool> out;
  for (const auto& o : c.outputs) out.push_back(val.at(o));
  return out;
}

std::set<std::string> circuit_range(const Circuit& c, int input_limit) {
  c.validate();
  if (c.inputs > input_limit)
    throw TooManyInputsError("circuit has " + std::to_string(c.inputs) + " inputs; limit is " +
                             std::to_string(input_limit));
  std::set<std::string> range;
  for (std::uint64_t bits = 0; bits < (1ULL << c.inputs); ++bits) {
    std::vector<bool> in(c.inputs);
    for (int k = 0; k < c.inputs; ++k) in[k] = (bits >> k) & 1;
    std::string s;
    for (bool b : eval_circuit(c, in)) s += b ? '1' : '0';
    range.insert(s);
  }
  return range;
}

namespace {

Atom wire_atom(const std::string& id) {
  if (int k = input_index(id)) return Atom("x_" + std::to_string(k));
  return Atom("y_" + id);
}

}  // namespace

CnfFormula tau_cnf(const TauInstance& t) {
  const Circuit& c = t.circuit;
  c.validate();
  if (t.target.size() != 2 * static_cast<std::size_t>(c.inputs))
    throw ParamError("target must have length " + std::to_string(2 * c.inputs));
  if (t.target.find_first_not_of("01") != std::string::npos) throw ParamError("target must be a bit string");
  CnfFormula cnf;
  for (int k = 1; k <= c.inputs; ++k) cnf.atoms.emplace_back("x_" + std::to_string(k));
  for (const Gate& g : c.gates) cnf.atoms.push_back(wire_atom(g.id));
  for (const Gate& g : c.gates) {
    Atom y = wire_atom(g.id);
    Literal Y{y, true};
    auto arg = [&](std::size_t i) { return Literal{wire_atom(g.args[i]), true}; };
    auto& cl = cnf.clauses;
    switch (g.op) {
      case GateOp::And:
        cl.push_back(Clause{~Y, arg(0)});
        cl.push_back(Clause{~Y, arg(1)});
        cl.push_back(Clause{Y, ~arg(0), ~arg(1)});
        break;
      case GateOp::Or:
        cl.push_back(Clause{Y, ~arg(0)});
        cl.push_back(Clause{Y, ~arg(1)});
        cl.push_back(Clause{~Y, arg(0), arg(1)});
        break;
      case GateOp::Xor:
        cl.push_back(Clause{~Y, arg(0), arg(1)});
        cl.push_back(Clause{~Y, ~arg(0), ~arg(1)});
        cl.push_back(Clause{Y, ~arg(0), arg(1)});
        cl.push_back(Clause{Y, arg(0), ~arg(1)});
        break;
      case GateOp::Not:
        cl.push_back(Clause{~Y, ~arg(0)});
        cl.push_back(Clause{Y, arg(0)});
        break;
      case GateOp::Const0: cl.push_back(Clause{~Y}); break;
      case GateOp::Const1: cl.push_back(Clause{Y}); break;
    }
  }
  for (std::size_t i = 0; i < c.outputs.size(); ++i)
    cnf.clauses.push_back(Clause{Literal{wire_atom(c.outputs[i]), t.target[i] == '1'}});
  return cnf;
}

Formula gen_tau(const TauInstance& t) { return dnf_negation(tau_cnf(t)); }

}  // namespace pcw
