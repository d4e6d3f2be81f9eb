#include "rnqc/ir/lowering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "rnqc/error.hpp"

namespace rnqc::ir {

namespace {

const RegisterLayout& require_layout(const Circuit& circuit, const char* pass) {
  if (!circuit.layout()) {
    throw Error(ErrorKind::Config, std::string(pass) + ": circuit has no register layout");
  }
  return *circuit.layout();
}

void check_not_reserved(const Gate& gate, const RegisterLayout& layout) {
  const std::vector<Qubit> reserved = layout.reserved();
  for (Qubit q : gate.operands()) {
    if (std::find(reserved.begin(), reserved.end(), q) != reserved.end()) {
      throw Error(ErrorKind::Config, std::string(to_string(gate.kind())) + " acts on reserved ancilla " +
                                         std::to_string(q));
    }
  }
}

// Rewrites gates of one kind; everything else is copied.
Circuit rewrite(const Circuit& circuit, GateKind kind,
                const std::function<void(const Gate&, Circuit&)>& expand) {
  Circuit out(circuit.qubit_count(), circuit.layout());
  for (const Gate& gate : circuit.gates()) {
    if (gate.kind() == kind) {
      expand(gate, out);
    } else {
      out.append(gate);
    }
  }
  return out;
}

bool contains(const Circuit& circuit, GateKind kind) {
  return std::any_of(circuit.gates().begin(), circuit.gates().end(),
                     [kind](const Gate& g) { return g.kind() == kind; });
}

}  // namespace

Circuit lower_x(const Circuit& circuit) {
  if (!contains(circuit, GateKind::X)) return circuit;
  const RegisterLayout& layout = require_layout(circuit, "lower_x");
  if (layout.const_one.size() != 2) {
    throw Error(ErrorKind::Config, "lower_x: layout has no const_one pair");
  }
  return rewrite(circuit, GateKind::X, [&](const Gate& gate, Circuit& out) {
    check_not_reserved(gate, layout);
    out.append(Gate::ccnot(layout.const_one[0], layout.const_one[1], gate.target()));
  });
}

Circuit lower_z(const Circuit& circuit) {
  return rewrite(circuit, GateKind::Z, [](const Gate& gate, Circuit& out) {
    const Qubit q = gate.target();
    out.append(Gate::h(q));
    out.append(Gate::x(q));
    out.append(Gate::h(q));
  });
}

Circuit lower_cnot(const Circuit& circuit) {
  if (!contains(circuit, GateKind::CNOT)) return circuit;
  const RegisterLayout& layout = require_layout(circuit, "lower_cnot");
  std::optional<Qubit> one = layout.helper_one;
  if (!one && !layout.const_one.empty()) one = layout.const_one.front();
  if (!one) throw Error(ErrorKind::Config, "lower_cnot: layout has no |1> ancilla");
  return rewrite(circuit, GateKind::CNOT, [&](const Gate& gate, Circuit& out) {
    check_not_reserved(gate, layout);
    out.append(Gate::ccnot(*one, gate.controls()[0], gate.target()));
  });
}

Circuit lower_ncnot(const Circuit& circuit) {
  if (!contains(circuit, GateKind::NCNOT)) return circuit;
  const RegisterLayout& layout = require_layout(circuit, "lower_ncnot");
  const std::vector<Qubit>& pool = layout.chain_ancilla;
  return rewrite(circuit, GateKind::NCNOT, [&](const Gate& gate, Circuit& out) {
    check_not_reserved(gate, layout);
    const auto controls = gate.controls();
    const std::size_t k = controls.size();
    if (k == 1) {
      out.append(Gate::cnot(controls[0], gate.target()));
      return;
    }
    if (k == 2) {
      out.append(Gate::ccnot(controls[0], controls[1], gate.target()));
      return;
    }
    if (pool.size() < k - 2) {
      throw Error(ErrorKind::Resource, "lower_ncnot: " + std::to_string(k) +
                                           "-controlled NOT needs " + std::to_string(k - 2) +
                                           " chain ancillas, pool has " +
                                           std::to_string(pool.size()));
    }
    std::vector<Gate> compute;
    compute.push_back(Gate::ccnot(controls[0], controls[1], pool[0]));
    for (std::size_t j = 2; j + 1 < k; ++j) {
      compute.push_back(Gate::ccnot(controls[j], pool[j - 2], pool[j - 1]));
    }
    for (const Gate& g : compute) out.append(g);
    out.append(Gate::ccnot(controls[k - 1], pool[k - 3], gate.target()));
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.append(*it);
  });
}

Circuit lower_cg(const Circuit& circuit) {
  return rewrite(circuit, GateKind::CG, [](const Gate& gate, Circuit& out) {
    const Qubit c = gate.controls()[0];
    const Qubit t = gate.target();
    const double half = std::sqrt(gate.param());
    out.append(Gate::x(c));
    out.append(Gate::cnot(c, t));
    out.append(Gate::g(t, half));
    out.append(Gate::cnot(c, t));
    out.append(Gate::x(c));
    out.append(Gate::g(t, half));
  });
}

std::size_t required_chain_ancillas(const Circuit& circuit) {
  std::size_t need = 0;
  for (const Gate& gate : circuit.gates()) {
    if (gate.kind() == GateKind::NCNOT && gate.controls().size() >= 3) {
      need = std::max(need, gate.controls().size() - 2);
    }
  }
  return need;
}

Circuit lower_to_primitive(const Circuit& circuit) {
  bool needs_one = false;
  for (const Gate& gate : circuit.gates()) {
    switch (gate.kind()) {
      case GateKind::T:
        throw Error(ErrorKind::Unsupported,
                    "T cannot be lowered: the real set {H, CCNOT, G} does not generate T");
      case GateKind::X:
      case GateKind::Z:
      case GateKind::CNOT:
      case GateKind::CG: needs_one = true; break;
      case GateKind::NCNOT: needs_one = needs_one || gate.controls().size() == 1; break;
      default: break;
    }
  }
  if (validate_primitive(circuit)) return circuit;

  RegisterLayout layout;
  if (circuit.layout()) {
    layout = *circuit.layout();
  } else {
    layout.data.resize(circuit.qubit_count());
    std::iota(layout.data.begin(), layout.data.end(), Qubit{0});
  }
  std::size_t width = circuit.qubit_count();
  if (needs_one && layout.const_one.empty()) {
    layout.const_one = {width, width + 1};
    width += 2;
  }
  const std::size_t chain = required_chain_ancillas(circuit);
  while (layout.chain_ancilla.size() < chain) layout.chain_ancilla.push_back(width++);

  Circuit current(width, circuit.gates(), layout);
  current = lower_cg(current);
  current = lower_z(current);
  current = lower_ncnot(current);
  current = lower_cnot(current);
  current = lower_x(current);
  if (!validate_primitive(current)) {
    throw Error(ErrorKind::Invariant, "lowering left non-primitive gates");
  }
  return current;
}

}  // namespace rnqc::ir
