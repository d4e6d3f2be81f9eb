#include <gtest/gtest.h>

#include <random>

#include "rnqc/error.hpp"
#include "rnqc/ir/circuit.hpp"
#include "rnqc/ir/json_io.hpp"
#include "support.hpp"

namespace {

using namespace rnqc;
using namespace rnqc::ir;

TEST(Gate, RejectsDuplicateOperandsAndMissingParams) {
  EXPECT_THROW(Gate::cnot(1, 1), Error);
  EXPECT_THROW(Gate::make(GateKind::G, {0}), Error);
  EXPECT_THROW(Gate::make(GateKind::H, {0}, 2.0), Error);
  EXPECT_THROW(Gate::make(GateKind::CCNOT, {0, 1}), Error);
}

TEST(Gate, KindStringsRoundTrip) {
  for (GateKind k : kAllGateKinds) EXPECT_EQ(gate_kind_from_string(to_string(k)), k);
  EXPECT_FALSE(gate_kind_from_string("SWAP").has_value());
}

TEST(Circuit, OperandsMustBeInRange) {
  Circuit c(2);
  EXPECT_THROW(c.append(Gate::h(2)), Error);
  c.append(Gate::cnot(0, 1));
  EXPECT_EQ(c.size(), 1u);
}

TEST(Census, PrimitiveSet) {
  const Circuit ok(3, {Gate::h(0), Gate::ccnot(0, 1, 2), Gate::g(1, 2.0)});
  EXPECT_TRUE(validate_primitive(ok));
  const Circuit bad(2, {Gate::h(0), Gate::cnot(0, 1)});
  EXPECT_FALSE(validate_primitive(bad));
  const auto census = gate_census(bad);
  EXPECT_EQ(census.total(), bad.size());
  EXPECT_EQ(census.count(GateKind::CNOT), 1u);
}

TEST(Layout, DisjointAndCovering) {
  RegisterLayout l;
  l.work = {0, 1};
  l.oracle = 2;
  EXPECT_NO_THROW(l.validate(3, true));
  EXPECT_THROW(l.validate(4, true), Error);
  l.clause = {1};
  EXPECT_THROW(l.validate(3, false), Error);
}

TEST(Layout, RestIndexHasOnesOnlyOnConstQubits) {
  RegisterLayout l;
  l.work = {0};
  l.const_one = {1, 2};
  l.helper_one = 4;
  l.chain_ancilla = {3};
  EXPECT_EQ(l.rest_basis_index(), 0b10110u);
}

TEST(Json, RoundTripIsByteExact) {
  std::mt19937_64 rng(3);
  const std::vector<GateKind> kinds(std::begin(kAllGateKinds), std::end(kAllGateKinds));
  for (int k = 0; k < 50; ++k) {
    const Circuit c = test::random_circuit(rng, 5, 12, kinds);
    const std::string text = write_circuit(c);
    const Circuit back = read_circuit(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(write_circuit(back), text);
  }
}

TEST(Json, LayoutSurvivesRoundTrip) {
  RegisterLayout l;
  l.work = {0, 1};
  l.oracle = 2;
  l.const_one = {3, 4};
  const Circuit c(5, {Gate::ccnot(3, 4, 2)}, l);
  EXPECT_EQ(read_circuit(write_circuit(c)), c);
}

TEST(Json, MalformedInputIsParseError) {
  for (const char* text : {R"({"gates":[]})", R"({"qubits":1,"gates":[{"g":"FOO","q":[0]}]})",
                           R"({"qubits":1,"gates":[{"g":"H","q":[3]}]})", "not json"}) {
    try {
      read_circuit(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << text;
    } catch (const std::exception&) {
      ADD_FAILURE() << "untyped exception for " << text;
    }
  }
}

}  // namespace
