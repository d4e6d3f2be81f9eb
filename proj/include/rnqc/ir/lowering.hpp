#pragma once

#include "rnqc/ir/circuit.hpp"

// Rewrites from the full gate vocabulary down to the real primitive set
// {H, CCNOT, G}. Each pass is a pure function of its input circuit. Passes
// that need ancillas read them from the circuit's layout; only
// lower_to_primitive grows the register.

namespace rnqc::ir {

/// X(t) -> CCNOT(one0, one1, t) with the layout's two const_one qubits.
Circuit lower_x(const Circuit& circuit);

/// Z -> H X H on the same qubit. The X gates are left for lower_x.
Circuit lower_z(const Circuit& circuit);

/// CNOT(c, t) -> CCNOT(one, c, t). Uses helper_one when the layout has one,
/// otherwise the first const_one qubit.
Circuit lower_cnot(const Circuit& circuit);

/// Multi-controlled NOT with k controls. k = 1 becomes CNOT and k = 2 becomes
/// CCNOT. For k >= 3 the conjunction chain
///   CCNOT(c0, c1, a0), CCNOT(c2, a0, a1), ..., CCNOT(c_{k-1}, a_{k-3}, t)
/// is followed by the first k - 2 chain gates in reverse, so every chain
/// ancilla is back at |0> afterwards: 2k - 3 CCNOTs in total.
Circuit lower_ncnot(const Circuit& circuit);

/// CG(c, t, g) -> X(c) CNOT(c,t) G(t,√g) CNOT(c,t) X(c) G(t,√g).
///
/// With control off the target sees G·X·G·X = I, with control on it sees
/// G(√g)² = G(g). The X and CNOT gates are left for later passes.
Circuit lower_cg(const Circuit& circuit);

/// Runs every pass to fixpoint, allocating const_one and chain ancillas when
/// the layout lacks them. Circuits without a layout get one with all input
/// qubits as `data`. Already-primitive circuits come back unchanged.
/// Throws ErrorKind::Unsupported for T.
Circuit lower_to_primitive(const Circuit& circuit);

/// Chain ancillas a circuit needs for lower_ncnot (max over NCNOTs of k - 2).
std::size_t required_chain_ancillas(const Circuit& circuit);

}  // namespace rnqc::ir
