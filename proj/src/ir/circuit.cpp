#include "rnqc/ir/circuit.hpp"

#include <algorithm>

#include "rnqc/error.hpp"

namespace rnqc::ir {

namespace {

std::vector<Qubit> single(const std::optional<Qubit>& q) {
  return q ? std::vector<Qubit>{*q} : std::vector<Qubit>{};
}

std::optional<Qubit> as_single(const std::string& role, const std::vector<Qubit>& qs) {
  if (qs.empty()) return std::nullopt;
  if (qs.size() != 1) {
    throw Error(ErrorKind::Parse, "layout role '" + role + "' takes exactly one qubit");
  }
  return qs.front();
}

}  // namespace

std::vector<std::pair<std::string, std::vector<Qubit>>> RegisterLayout::roles() const {
  std::vector<std::pair<std::string, std::vector<Qubit>>> out = {
      {"work", work},
      {"aux_var", aux_var},
      {"clause", clause},
      {"chain_ancilla", chain_ancilla},
      {"const_one", const_one},
      {"helper_one", single(helper_one)},
      {"oracle", single(oracle)},
      {"non_hermitian", single(non_hermitian)},
      {"bhr", single(bhr)},
      {"data", data},
  };
  std::erase_if(out, [](const auto& role) { return role.second.empty(); });
  return out;
}

RegisterLayout RegisterLayout::from_roles(
    const std::vector<std::pair<std::string, std::vector<Qubit>>>& roles) {
  RegisterLayout layout;
  for (const auto& [name, qs] : roles) {
    if (name == "work") layout.work = qs;
    else if (name == "aux_var") layout.aux_var = qs;
    else if (name == "clause") layout.clause = qs;
    else if (name == "chain_ancilla") layout.chain_ancilla = qs;
    else if (name == "const_one") layout.const_one = qs;
    else if (name == "data") layout.data = qs;
    else if (name == "helper_one") layout.helper_one = as_single(name, qs);
    else if (name == "oracle") layout.oracle = as_single(name, qs);
    else if (name == "non_hermitian") layout.non_hermitian = as_single(name, qs);
    else if (name == "bhr") layout.bhr = as_single(name, qs);
    else throw Error(ErrorKind::Parse, "unknown layout role '" + name + "'");
  }
  return layout;
}

std::vector<Qubit> RegisterLayout::all_qubits() const {
  std::vector<Qubit> out;
  for (const auto& [name, qs] : roles()) out.insert(out.end(), qs.begin(), qs.end());
  return out;
}

void RegisterLayout::validate(std::size_t qubit_count, bool require_cover) const {
  if (!const_one.empty() && const_one.size() != 2) {
    throw Error(ErrorKind::Invariant, "const_one must hold exactly two qubits");
  }
  std::vector<Qubit> qs = all_qubits();
  for (Qubit q : qs) {
    if (q >= qubit_count) {
      throw Error(ErrorKind::Invariant,
                  "layout qubit " + std::to_string(q) + " outside register of " +
                      std::to_string(qubit_count));
    }
  }
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
    throw Error(ErrorKind::Invariant, "layout roles overlap");
  }
  if (require_cover && qs.size() != qubit_count) {
    throw Error(ErrorKind::Invariant, "layout roles do not cover the register");
  }
}

std::uint64_t RegisterLayout::rest_basis_index() const {
  std::uint64_t index = 0;
  for (Qubit q : const_one) index |= std::uint64_t{1} << q;
  if (helper_one) index |= std::uint64_t{1} << *helper_one;
  return index;
}

std::vector<Qubit> RegisterLayout::reserved() const {
  std::vector<Qubit> out = chain_ancilla;
  out.insert(out.end(), const_one.begin(), const_one.end());
  if (helper_one) out.push_back(*helper_one);
  return out;
}

Circuit::Circuit(std::size_t qubit_count, std::optional<RegisterLayout> layout)
    : qubit_count_(qubit_count), layout_(std::move(layout)) {
  if (layout_) layout_->validate(qubit_count_, false);
}

Circuit::Circuit(std::size_t qubit_count, std::vector<Gate> gates,
                 std::optional<RegisterLayout> layout)
    : Circuit(qubit_count, std::move(layout)) {
  gates_.reserve(gates.size());
  for (auto& gate : gates) append(std::move(gate));
}

void Circuit::check_operands(const Gate& gate) const {
  for (Qubit q : gate.operands()) {
    if (q >= qubit_count_) {
      throw Error(ErrorKind::Config, std::string(to_string(gate.kind())) + " operand " +
                                         std::to_string(q) + " outside register of " +
                                         std::to_string(qubit_count_));
    }
  }
}

void Circuit::append(Gate gate) {
  check_operands(gate);
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& other) {
  if (other.qubit_count() > qubit_count_) {
    throw Error(ErrorKind::Config, "appended circuit is wider than the register");
  }
  for (const Gate& gate : other.gates()) append(gate);
}

Circuit Circuit::reversed() const {
  Circuit out(qubit_count_, layout_);
  out.gates_.assign(gates_.rbegin(), gates_.rend());
  return out;
}

std::size_t GateCensus::total() const {
  std::size_t n = 0;
  for (const auto& [kind, c] : counts) n += c;
  return n;
}

std::size_t GateCensus::count(GateKind kind) const {
  auto it = counts.find(kind);
  return it == counts.end() ? 0 : it->second;
}

GateCensus gate_census(const Circuit& circuit) {
  GateCensus census;
  for (const Gate& gate : circuit.gates()) {
    ++census.counts[gate.kind()];
    if (!is_primitive(gate.kind())) census.is_primitive = false;
  }
  return census;
}

bool validate_primitive(const Circuit& circuit) { return gate_census(circuit).is_primitive; }

}  // namespace rnqc::ir
