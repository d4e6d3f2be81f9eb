#pragma once

#include <cstdint>
#include <vector>

#include "rnqc/cnf/three_cnf.hpp"
#include "rnqc/ir/circuit.hpp"

namespace rnqc::cnf {

struct OracleOptions {
  /// Append X to each clause qubit after its stage so that 1 means satisfied.
  /// Without it the clause stages mark unsatisfied clauses and the final
  /// multi-controlled NOT no longer computes f.
  bool polarity_fix = true;
  /// Give the three clauses of every aux definition their own clause qubits.
  /// They are satisfied by construction once the aux qubits are computed, so
  /// the default leaves them out.
  bool include_definition_clauses = false;
};

/// Oracle circuit over the register
///   [work (n) | aux_var | clause (p) | oracle]
/// built from X, CCNOT and NCNOT only. On a basis input with work = x and
/// everything else |0>, it leaves work unchanged, aux qubits holding the
/// extension of x, clause qubits holding clause truth values and the oracle
/// qubit holding f(x).
struct OracleArtifact {
  ir::Circuit circuit;
  ir::RegisterLayout layout;
  std::size_t clause_count = 0;
  /// Clause list the clause qubits encode, in qubit order.
  std::vector<Clause> encoded_clauses;
  OracleOptions options;
};

OracleArtifact build_oracle(const ThreeCnf& formula, OracleOptions options = {});

enum class OracleMode { Semantic, Primitive };

struct OracleMismatch {
  std::uint64_t assignment;
  bool expected;
  bool observed;
};

struct OracleReport {
  std::uint64_t inputs_checked = 0;
  std::vector<OracleMismatch> mismatches;
  /// Inputs after which a work, aux, chain or |1> ancilla qubit was wrong.
  std::vector<std::uint64_t> ancilla_violations;
  /// Inputs after which a clause qubit disagreed with its clause's value.
  std::vector<std::uint64_t> clause_violations;

  bool passed() const {
    return mismatches.empty() && ancilla_violations.empty() && clause_violations.empty();
  }
};

/// Runs the oracle on every work-basis input and compares the oracle qubit
/// with direct evaluation of `formula`. Primitive mode lowers the circuit to
/// {H, CCNOT, G} first and also checks that every ancilla is back at rest.
OracleReport verify_oracle(const OracleArtifact& artifact, const CnfFormula& formula,
                           OracleMode mode = OracleMode::Semantic);

}  // namespace rnqc::cnf
