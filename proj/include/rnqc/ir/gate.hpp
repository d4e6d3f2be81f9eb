#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rnqc::ir {

using Qubit = std::size_t;

/// Supported gate kinds. G is diag(1/g, g); CG applies G to the target on the
/// control-|1> subspace. T is diag(1, e^{-i pi/4}) and needs a complex state.
enum class GateKind { H, X, Z, T, CNOT, CCNOT, NCNOT, G, CG };

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::H,     GateKind::X,     GateKind::Z, GateKind::T, GateKind::CNOT,
    GateKind::CCNOT, GateKind::NCNOT, GateKind::G, GateKind::CG};

std::string_view to_string(GateKind kind) noexcept;
std::optional<GateKind> gate_kind_from_string(std::string_view name) noexcept;

/// True for H, CCNOT and G: the real non-unitary primitive set.
bool is_primitive(GateKind kind) noexcept;
bool has_param(GateKind kind) noexcept;

/// One gate application. Operands are ordered controls first, target last.
/// Instances are validated on construction and immutable afterwards.
class Gate {
 public:
  static Gate make(GateKind kind, std::vector<Qubit> operands,
                   std::optional<double> param = std::nullopt);

  static Gate h(Qubit q) { return make(GateKind::H, {q}); }
  static Gate x(Qubit q) { return make(GateKind::X, {q}); }
  static Gate z(Qubit q) { return make(GateKind::Z, {q}); }
  static Gate t(Qubit q) { return make(GateKind::T, {q}); }
  static Gate g(Qubit q, double param) { return make(GateKind::G, {q}, param); }
  static Gate cnot(Qubit control, Qubit target) {
    return make(GateKind::CNOT, {control, target});
  }
  static Gate ccnot(Qubit c0, Qubit c1, Qubit target) {
    return make(GateKind::CCNOT, {c0, c1, target});
  }
  static Gate ncnot(std::span<const Qubit> controls, Qubit target);
  static Gate cg(Qubit control, Qubit target, double param) {
    return make(GateKind::CG, {control, target}, param);
  }

  GateKind kind() const noexcept { return kind_; }
  std::span<const Qubit> operands() const noexcept { return operands_; }
  std::span<const Qubit> controls() const noexcept {
    return std::span<const Qubit>(operands_).first(operands_.size() - 1);
  }
  Qubit target() const noexcept { return operands_.back(); }

  bool has_param() const noexcept { return param_.has_value(); }
  /// Throws for kinds without a parameter.
  double param() const;
  std::optional<double> maybe_param() const noexcept { return param_; }

  /// True if the gate maps computational basis states to basis states.
  bool is_permutation() const noexcept;
  /// True if the gate matrix is diagonal in the computational basis.
  bool is_diagonal() const noexcept;
  /// True if the gate matrix is unitary.
  bool is_unitary() const noexcept;

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  Gate(GateKind kind, std::vector<Qubit> operands, std::optional<double> param)
      : kind_(kind), operands_(std::move(operands)), param_(param) {}

  GateKind kind_;
  std::vector<Qubit> operands_;
  std::optional<double> param_;
};

}  // namespace rnqc::ir
