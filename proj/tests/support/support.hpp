#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rnqc/cnf/formula.hpp"
#include "rnqc/ir/circuit.hpp"

namespace rnqc::test {

inline std::vector<std::filesystem::path> cnf_files(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".cnf") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::filesystem::path> corpus() { return cnf_files(RNQC_CORPUS_DIR); }

inline std::vector<std::filesystem::path> corpus_with_large() {
  auto out = corpus();
  auto large = cnf_files(RNQC_CORPUS_LARGE_DIR);
  out.insert(out.end(), large.begin(), large.end());
  return out;
}

/// Random formula without tautological clauses. Widths are drawn uniformly
/// from [1, max_width] and clipped to n.
inline cnf::CnfFormula random_formula(std::mt19937_64& rng, std::size_t n, std::size_t clauses,
                                      std::size_t max_width) {
  cnf::CnfFormula f;
  f.num_vars = n;
  std::vector<int> vars(n);
  for (std::size_t v = 0; v < n; ++v) vars[v] = static_cast<int>(v + 1);
  std::uniform_int_distribution<std::size_t> width(1, std::min(max_width, n));
  std::bernoulli_distribution negate(0.5);
  for (std::size_t c = 0; c < clauses; ++c) {
    std::shuffle(vars.begin(), vars.end(), rng);
    cnf::Clause clause;
    const std::size_t w = width(rng);
    for (std::size_t k = 0; k < w; ++k) clause.push_back(negate(rng) ? -vars[k] : vars[k]);
    f.clauses.push_back(clause);
  }
  return f;
}

/// Random circuit over `kinds` with distinct operands. G and CG parameters
/// are drawn from {0.5, 2, 3}.
inline ir::Circuit random_circuit(std::mt19937_64& rng, std::size_t qubits, std::size_t gates,
                                  const std::vector<ir::GateKind>& kinds) {
  ir::Circuit c(qubits);
  std::vector<ir::Qubit> order(qubits);
  for (std::size_t q = 0; q < qubits; ++q) order[q] = q;
  const double params[] = {0.5, 2.0, 3.0};
  std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
  std::uniform_int_distribution<int> pick_param(0, 2);
  while (c.size() < gates) {
    const ir::GateKind kind = kinds[pick_kind(rng)];
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t arity = 1;
    switch (kind) {
      case ir::GateKind::CNOT:
      case ir::GateKind::CG: arity = 2; break;
      case ir::GateKind::CCNOT: arity = 3; break;
      case ir::GateKind::NCNOT: arity = std::uniform_int_distribution<std::size_t>(2, qubits)(rng); break;
      default: break;
    }
    if (arity > qubits) continue;
    std::vector<ir::Qubit> ops(order.begin(), order.begin() + static_cast<long>(arity));
    std::optional<double> param;
    if (kind == ir::GateKind::G || kind == ir::GateKind::CG) param = params[pick_param(rng)];
    c.append(ir::Gate::make(kind, ops, param));
  }
  return c;
}

}  // namespace rnqc::test
