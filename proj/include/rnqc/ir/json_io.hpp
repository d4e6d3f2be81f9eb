#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "rnqc/ir/circuit.hpp"

namespace rnqc::ir {

/// Circuit JSON:
///   {"qubits": int, "layout": {role: [idx...]}?, "gates": [{"g": kind, "q": [idx...], "param": num?}]}
/// Doubles are written in shortest round-trip form, so write(read(text))
/// reproduces canonical text byte for byte.
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

std::string write_circuit(const Circuit& circuit, int indent = 2);
Circuit read_circuit(const std::string& text);
Circuit read_circuit_file(const std::string& path);

nlohmann::json census_to_json(const GateCensus& census);

}  // namespace rnqc::ir
