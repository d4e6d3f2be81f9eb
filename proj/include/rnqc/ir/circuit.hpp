#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rnqc/ir/gate.hpp"

namespace rnqc::ir {

/// Named roles for the qubits of a register.
///
/// Rest values: `const_one` and `helper_one` sit at |1> for the whole
/// computation; every other role starts at |0>. Chain ancillas are returned
/// to |0> by the multi-control lowering.
struct RegisterLayout {
  std::vector<Qubit> work;           ///< one per original formula variable
  std::vector<Qubit> aux_var;        ///< computed variables introduced by 3-CNF conversion
  std::vector<Qubit> clause;         ///< one per clause
  std::vector<Qubit> chain_ancilla;  ///< shared pool for multi-control chains
  std::vector<Qubit> const_one;      ///< exactly two qubits at |1> when present
  std::vector<Qubit> data;           ///< untyped qubits of a generic circuit
  std::optional<Qubit> helper_one;   ///< |1> control for the BHR-controlled NOT
  std::optional<Qubit> oracle;
  std::optional<Qubit> non_hermitian;
  std::optional<Qubit> bhr;

  /// (role name, indices) pairs in a fixed order; empty roles are skipped.
  std::vector<std::pair<std::string, std::vector<Qubit>>> roles() const;
  /// Inverse of roles(). Throws a parse error on unknown role names.
  static RegisterLayout from_roles(
      const std::vector<std::pair<std::string, std::vector<Qubit>>>& roles);

  std::vector<Qubit> all_qubits() const;

  /// Checks disjointness and range; with `require_cover`, also that the roles
  /// cover exactly [0, qubit_count).
  void validate(std::size_t qubit_count, bool require_cover) const;

  /// Basis index with every qubit at its rest value.
  std::uint64_t rest_basis_index() const;

  /// Qubits that must be at rest on entry and exit of a lowered circuit.
  std::vector<Qubit> reserved() const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

/// Ordered gate list over a fixed register.
class Circuit {
 public:
  Circuit() : Circuit(0) {}
  explicit Circuit(std::size_t qubit_count, std::optional<RegisterLayout> layout = std::nullopt);
  Circuit(std::size_t qubit_count, std::vector<Gate> gates,
          std::optional<RegisterLayout> layout = std::nullopt);

  std::size_t qubit_count() const noexcept { return qubit_count_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }
  const std::optional<RegisterLayout>& layout() const noexcept { return layout_; }

  void append(Gate gate);
  void append(const Circuit& other);

  /// Same gates in reverse order. Every gate kind except G, CG and T is
  /// self-inverse, so for permutation circuits this is the inverse.
  Circuit reversed() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_operands(const Gate& gate) const;

  std::size_t qubit_count_;
  std::vector<Gate> gates_;
  std::optional<RegisterLayout> layout_;
};

struct GateCensus {
  std::map<GateKind, std::size_t> counts;
  bool is_primitive = true;

  std::size_t total() const;
  std::size_t count(GateKind kind) const;
};

GateCensus gate_census(const Circuit& circuit);
bool validate_primitive(const Circuit& circuit);

}  // namespace rnqc::ir
