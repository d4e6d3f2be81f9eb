#include "rnqc/ir/gate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rnqc/error.hpp"

namespace rnqc::ir {

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::T: return "T";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CCNOT: return "CCNOT";
    case GateKind::NCNOT: return "NCNOT";
    case GateKind::G: return "G";
    case GateKind::CG: return "CG";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept {
  for (GateKind kind : kAllGateKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_primitive(GateKind kind) noexcept {
  return kind == GateKind::H || kind == GateKind::CCNOT || kind == GateKind::G;
}

bool has_param(GateKind kind) noexcept {
  return kind == GateKind::G || kind == GateKind::CG;
}

namespace {

std::size_t fixed_arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::T:
    case GateKind::G: return 1;
    case GateKind::CNOT:
    case GateKind::CG: return 2;
    case GateKind::CCNOT: return 3;
    case GateKind::NCNOT: return 0;
  }
  return 0;
}

}  // namespace

Gate Gate::make(GateKind kind, std::vector<Qubit> operands, std::optional<double> param) {
  const std::string name(to_string(kind));
  const std::size_t arity = fixed_arity(kind);
  if (arity != 0 && operands.size() != arity) {
    throw Error(ErrorKind::Config, name + " takes " + std::to_string(arity) +
                                       " operand(s), got " + std::to_string(operands.size()));
  }
  if (kind == GateKind::NCNOT && operands.size() < 2) {
    throw Error(ErrorKind::Config, "NCNOT needs at least one control and a target");
  }
  std::vector<Qubit> sorted = operands;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::Config, name + " has duplicate operands");
  }
  if (ir::has_param(kind)) {
    if (!param) throw Error(ErrorKind::Config, name + " requires a parameter");
    if (!std::isfinite(*param) || *param <= 0.0 || *param == 1.0) {
      throw Error(ErrorKind::Config, name + " parameter must be finite, positive and != 1");
    }
  } else if (param) {
    throw Error(ErrorKind::Config, name + " takes no parameter");
  }
  return Gate(kind, std::move(operands), param);
}

Gate Gate::ncnot(std::span<const Qubit> controls, Qubit target) {
  std::vector<Qubit> ops(controls.begin(), controls.end());
  ops.push_back(target);
  return make(GateKind::NCNOT, std::move(ops));
}

double Gate::param() const {
  if (!param_) {
    throw Error(ErrorKind::Invariant, std::string(to_string(kind_)) + " has no parameter");
  }
  return *param_;
}

bool Gate::is_permutation() const noexcept {
  switch (kind_) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::CCNOT:
    case GateKind::NCNOT: return true;
    default: return false;
  }
}

bool Gate::is_diagonal() const noexcept {
  switch (kind_) {
    case GateKind::Z:
    case GateKind::T:
    case GateKind::G:
    case GateKind::CG: return true;
    default: return false;
  }
}

bool Gate::is_unitary() const noexcept {
  return kind_ != GateKind::G && kind_ != GateKind::CG;
}

}  // namespace rnqc::ir
