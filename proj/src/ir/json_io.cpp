#include "rnqc/ir/json_io.hpp"

#include <fstream>
#include <sstream>

#include "rnqc/error.hpp"

namespace rnqc::ir {

using nlohmann::json;

json circuit_to_json(const Circuit& circuit) {
  json doc = json::object();
  doc["qubits"] = circuit.qubit_count();
  if (circuit.layout()) {
    json layout = json::object();
    for (const auto& [role, qs] : circuit.layout()->roles()) layout[role] = qs;
    doc["layout"] = layout;
  }
  json gates = json::array();
  for (const Gate& gate : circuit.gates()) {
    json g = json::object();
    g["g"] = std::string(to_string(gate.kind()));
    g["q"] = std::vector<Qubit>(gate.operands().begin(), gate.operands().end());
    if (gate.has_param()) g["param"] = gate.param();
    gates.push_back(std::move(g));
  }
  doc["gates"] = std::move(gates);
  return doc;
}

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw Error(ErrorKind::Parse, "circuit JSON: " + msg);
}

std::vector<Qubit> index_list(const json& value, const std::string& what) {
  if (!value.is_array()) fail(what + " must be an array");
  std::vector<Qubit> out;
  for (const json& v : value) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      fail(what + " entries must be non-negative integers");
    }
    out.push_back(v.get<Qubit>());
  }
  return out;
}

}  // namespace

Circuit circuit_from_json(const json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("qubits") || !doc["qubits"].is_number_integer() ||
      doc["qubits"].get<long long>() < 0) {
    fail("missing or invalid 'qubits'");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "qubits" && key != "layout" && key != "gates") fail("unknown field '" + key + "'");
  }
  const std::size_t qubits = doc["qubits"].get<std::size_t>();

  std::optional<RegisterLayout> layout;
  if (doc.contains("layout")) {
    const json& l = doc["layout"];
    if (!l.is_object()) fail("'layout' must be an object");
    std::vector<std::pair<std::string, std::vector<Qubit>>> roles;
    for (const auto& [role, value] : l.items()) roles.emplace_back(role, index_list(value, role));
    layout = RegisterLayout::from_roles(roles);
    try {
      layout->validate(qubits, false);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  if (!doc.contains("gates") || !doc["gates"].is_array()) fail("missing 'gates' array");
  Circuit circuit(qubits, layout);
  std::size_t position = 0;
  for (const json& g : doc["gates"]) {
    const std::string where = "gate " + std::to_string(position++);
    if (!g.is_object() || !g.contains("g") || !g["g"].is_string() || !g.contains("q")) {
      fail(where + " needs string 'g' and array 'q'");
    }
    const auto kind = gate_kind_from_string(g["g"].get<std::string>());
    if (!kind) fail(where + ": unknown kind '" + g["g"].get<std::string>() + "'");
    std::optional<double> param;
    if (g.contains("param")) {
      if (!g["param"].is_number()) fail(where + ": 'param' must be a number");
      param = g["param"].get<double>();
    }
    try {
      circuit.append(Gate::make(*kind, index_list(g["q"], where + " operands"), param));
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    }
  }
  return circuit;
}

std::string write_circuit(const Circuit& circuit, int indent) {
  return circuit_to_json(circuit).dump(indent) + "\n";
}

Circuit read_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());
  }
  return circuit_from_json(doc);
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_circuit(buffer.str());
}

json census_to_json(const GateCensus& census) {
  json counts = json::object();
  for (const auto& [kind, c] : census.counts) counts[std::string(to_string(kind))] = c;
  return json{{"counts", counts}, {"total", census.total()}, {"is_primitive", census.is_primitive}};
}

}  // namespace rnqc::ir
