#include "rnqc/cnf/oracle.hpp"

#include <cstdlib>
#include <string>

#include "rnqc/error.hpp"
#include "rnqc/ir/lowering.hpp"
#include "rnqc/sim/state_vector.hpp"

namespace rnqc::cnf {

using ir::Gate;
using ir::Qubit;

namespace {

// Fires the target exactly when every literal is false: X on the qubits of
// positive literals, the multi-controlled NOT, then the same X gates again.
void append_all_false_stage(ir::Circuit& circuit, const Clause& clause,
                            const std::vector<Qubit>& var_qubit, Qubit target) {
  std::vector<Qubit> controls;
  for (Literal lit : clause) controls.push_back(var_qubit[std::abs(lit) - 1]);
  for (Literal lit : clause) {
    if (lit > 0) circuit.append(Gate::x(var_qubit[lit - 1]));
  }
  if (controls.size() == 2) {
    circuit.append(Gate::ccnot(controls[0], controls[1], target));
  } else {
    circuit.append(Gate::ncnot(controls, target));
  }
  for (Literal lit : clause) {
    if (lit > 0) circuit.append(Gate::x(var_qubit[lit - 1]));
  }
}

bool clause_value(const Clause& clause, std::uint64_t assignment) {
  for (Literal lit : clause) {
    const bool v = (assignment >> (std::abs(lit) - 1)) & 1U;
    if (v == (lit > 0)) return true;
  }
  return false;
}

}  // namespace

OracleArtifact build_oracle(const ThreeCnf& formula, OracleOptions options) {
  if (formula.base.max_width() > 3) {
    throw Error(ErrorKind::Config, "build_oracle needs clauses of width <= 3");
  }
  const std::size_t n = formula.original_vars;
  const std::size_t aux = formula.aux_vars;

  std::vector<Clause> encoded;
  for (std::size_t i = 0; i < formula.base.clauses.size(); ++i) {
    const bool definition = i < formula.is_definition.size() && formula.is_definition[i];
    if (!definition || options.include_definition_clauses) {
      encoded.push_back(formula.base.clauses[i]);
    }
  }
  const std::size_t p = encoded.size();

  ir::RegisterLayout layout;
  Qubit next = 0;
  for (std::size_t i = 0; i < n; ++i) layout.work.push_back(next++);
  for (std::size_t i = 0; i < aux; ++i) layout.aux_var.push_back(next++);
  for (std::size_t i = 0; i < p; ++i) layout.clause.push_back(next++);
  layout.oracle = next++;

  std::vector<Qubit> var_qubit = layout.work;
  var_qubit.insert(var_qubit.end(), layout.aux_var.begin(), layout.aux_var.end());

  ir::Circuit circuit(next, layout);

  // Aux qubits: y = a OR b, i.e. NOT(all-false) on (a, b).
  for (const AuxDefinition& def : formula.mapping) {
    const Qubit y = var_qubit[def.aux_var - 1];
    append_all_false_stage(circuit, {def.a, def.b}, var_qubit, y);
    circuit.append(Gate::x(y));
  }

  for (std::size_t m = 0; m < p; ++m) {
    append_all_false_stage(circuit, encoded[m], var_qubit, layout.clause[m]);
    if (options.polarity_fix) circuit.append(Gate::x(layout.clause[m]));
  }

  if (p == 0) {
    circuit.append(Gate::x(*layout.oracle));
  } else if (p == 2) {
    circuit.append(Gate::ccnot(layout.clause[0], layout.clause[1], *layout.oracle));
  } else {
    circuit.append(Gate::ncnot(layout.clause, *layout.oracle));
  }

  return OracleArtifact{std::move(circuit), std::move(layout), p, std::move(encoded), options};
}

OracleReport verify_oracle(const OracleArtifact& artifact, const CnfFormula& formula,
                           OracleMode mode) {
  const ir::RegisterLayout& base = artifact.layout;
  if (formula.num_vars != base.work.size()) {
    throw Error(ErrorKind::Config, "formula has " + std::to_string(formula.num_vars) +
                                       " variables, oracle has " +
                                       std::to_string(base.work.size()) + " work qubits");
  }
  if (formula.num_vars > kMaxCountVars) {
    throw Error(ErrorKind::Resource, "oracle verification enumerates at most 2^" +
                                         std::to_string(kMaxCountVars) + " inputs");
  }

  ir::Circuit circuit = artifact.circuit;
  if (mode == OracleMode::Primitive) circuit = ir::lower_to_primitive(circuit);
  const ir::RegisterLayout layout = circuit.layout().value_or(base);
  if (circuit.qubit_count() > 63) {
    throw Error(ErrorKind::Resource, "oracle register wider than 63 qubits");
  }

  // Aux extension uses the same definitions the circuit was built from.
  ThreeCnf definitions;
  definitions.original_vars = base.work.size();
  definitions.aux_vars = base.aux_var.size();
  {
    const ThreeCnf full = to_3cnf(formula);
    definitions.mapping = full.mapping;
  }

  const std::uint64_t rest = layout.rest_basis_index();
  OracleReport report;
  const std::uint64_t inputs = std::uint64_t{1} << formula.num_vars;
  for (std::uint64_t x = 0; x < inputs; ++x) {
    std::uint64_t in = rest;
    for (std::size_t v = 0; v < base.work.size(); ++v) {
      if ((x >> v) & 1U) in |= std::uint64_t{1} << base.work[v];
    }
    const std::uint64_t out = sim::evolve_basis(circuit, in);
    ++report.inputs_checked;

    auto bit_of = [&](Qubit q) { return ((out >> q) & 1U) != 0; };
    const bool expected = formula.evaluate(x);
    const bool observed = bit_of(*base.oracle);
    if (expected != observed) report.mismatches.push_back({x, expected, observed});

    bool ancillas_ok = true;
    for (std::size_t v = 0; v < base.work.size(); ++v) {
      ancillas_ok = ancillas_ok && bit_of(base.work[v]) == (((x >> v) & 1U) != 0);
    }
    const std::uint64_t extended = definitions.extend(x);
    for (std::size_t a = 0; a < base.aux_var.size(); ++a) {
      const bool want = (extended >> (base.work.size() + a)) & 1U;
      ancillas_ok = ancillas_ok && bit_of(base.aux_var[a]) == want;
    }
    for (Qubit q : layout.chain_ancilla) ancillas_ok = ancillas_ok && !bit_of(q);
    for (Qubit q : layout.const_one) ancillas_ok = ancillas_ok && bit_of(q);
    if (layout.helper_one) ancillas_ok = ancillas_ok && bit_of(*layout.helper_one);
    if (!ancillas_ok) report.ancilla_violations.push_back(x);

    bool clauses_ok = true;
    for (std::size_t m = 0; m < artifact.encoded_clauses.size(); ++m) {
      const bool sat = clause_value(artifact.encoded_clauses[m], extended);
      const bool want = artifact.options.polarity_fix ? sat : !sat;
      clauses_ok = clauses_ok && bit_of(base.clause[m]) == want;
    }
    if (!clauses_ok) report.clause_violations.push_back(x);
  }
  return report;
}

}  // namespace rnqc::cnf
