#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rnqc/cnf/oracle.hpp"
#include "rnqc/error.hpp"
#include "rnqc/sim/state_vector.hpp"
#include "support.hpp"

namespace {

using namespace rnqc;
using namespace rnqc::cnf;

OracleArtifact oracle_for(const std::string& text, OracleOptions options = {}) {
  return build_oracle(to_3cnf(parse_dimacs(text)), options);
}

bool oracle_bit(const OracleArtifact& o, std::uint64_t x) {
  const std::uint64_t out = sim::evolve_basis(o.circuit, x);
  return (out >> *o.layout.oracle) & 1;
}

TEST(Oracle, ClauseStageConjugatesPositiveLiterals) {
  const auto o = oracle_for("p cnf 3 1\n-1 2 3 0\n");
  const auto& g = o.circuit.gates();
  ASSERT_GE(g.size(), 4u);
  EXPECT_EQ(g[0], ir::Gate::x(o.layout.work[1]));
  EXPECT_EQ(g[1], ir::Gate::x(o.layout.work[2]));
  EXPECT_EQ(g[2].kind(), ir::GateKind::NCNOT);
  EXPECT_EQ(std::vector<ir::Qubit>(g[2].controls().begin(), g[2].controls().end()), o.layout.work);
  EXPECT_EQ(g[2].target(), o.layout.clause[0]);
}

TEST(Oracle, TruthTableSmall) {
  const auto f = parse_dimacs("p cnf 3 1\n-1 2 3 0\n");
  const auto o = build_oracle(to_3cnf(f));
  for (std::uint64_t x = 0; x < 8; ++x) EXPECT_EQ(oracle_bit(o, x), f.evaluate(x)) << x;

  const auto both = oracle_for("p cnf 2 2\n1 0\n2 0\n");
  EXPECT_TRUE(oracle_bit(both, 0b11));
  EXPECT_FALSE(oracle_bit(both, 0b01));
}

TEST(Oracle, ZeroClausesAlwaysFlips) {
  const auto o = oracle_for("p cnf 2 0\n");
  EXPECT_EQ(o.clause_count, 0u);
  for (std::uint64_t x = 0; x < 4; ++x) EXPECT_TRUE(oracle_bit(o, x));
}

TEST(Oracle, WidthAboveThreeRejected) {
  ThreeCnf raw;
  raw.base = parse_dimacs("p cnf 4 1\n1 2 3 4 0\n");
  raw.original_vars = 4;
  raw.is_definition = {false};
  EXPECT_THROW(build_oracle(raw), Error);
}

TEST(Oracle, StructuralInvariants) {
  for (const auto& path : test::corpus()) {
    const auto o = build_oracle(to_3cnf(read_dimacs_file(path.string())));
    for (const auto& g : o.circuit.gates()) {
      const auto k = g.kind();
      EXPECT_TRUE(k == ir::GateKind::X || k == ir::GateKind::CCNOT || k == ir::GateKind::NCNOT) << path;
      // Work qubits are only ever conjugated by X around a clause stage.
      if (std::count(o.layout.work.begin(), o.layout.work.end(), g.target())) {
        EXPECT_EQ(k, ir::GateKind::X) << path;
      }
    }
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << o.layout.work.size()); ++x) {
      const std::uint64_t out = sim::evolve_basis(o.circuit, x);
      for (std::size_t v = 0; v < o.layout.work.size(); ++v) {
        EXPECT_EQ((out >> o.layout.work[v]) & 1, (x >> v) & 1) << path;
      }
    }
  }
}

TEST(Oracle, CorpusVerifiesInBothModes) {
  std::size_t files = 0;
  for (const auto& path : test::corpus()) {
    const auto f = read_dimacs_file(path.string());
    const auto o = build_oracle(to_3cnf(f));
    const auto semantic = verify_oracle(o, f, OracleMode::Semantic);
    EXPECT_TRUE(semantic.passed()) << path;
    EXPECT_EQ(semantic.inputs_checked, std::uint64_t{1} << f.num_vars);
    EXPECT_TRUE(verify_oracle(o, f, OracleMode::Primitive).passed()) << path;
    ++files;
  }
  EXPECT_EQ(files, 40u);
}

TEST(Oracle, PolarityFixDisabledIsCaught) {
  const auto f = parse_dimacs("p cnf 3 2\n1 2 0\n-3 0\n");
  const auto o = build_oracle(to_3cnf(f), {.polarity_fix = false});
  const auto report = verify_oracle(o, f);
  EXPECT_FALSE(report.mismatches.empty());
}

TEST(Oracle, DefinitionClausesCanBeIncluded) {
  const auto f = parse_dimacs("p cnf 4 1\n1 2 3 4 0\n");
  const auto lean = build_oracle(to_3cnf(f));
  const auto full = build_oracle(to_3cnf(f), {.include_definition_clauses = true});
  EXPECT_EQ(lean.clause_count, 1u);
  EXPECT_EQ(full.clause_count, 4u);
  EXPECT_TRUE(verify_oracle(full, f).passed());
}

TEST(Oracle, ReversedCircuitUndoesOracle) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 30; ++k) {
    const auto f = test::random_formula(rng, 1 + k % 4, 1 + k % 3, 4);
    const auto o = build_oracle(to_3cnf(f));
    const ir::Circuit undo = o.circuit.reversed();
    const std::size_t width = o.circuit.qubit_count();
    ASSERT_LE(width, 16u);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << width); ++y) {
      ASSERT_EQ(sim::evolve_basis(undo, sim::evolve_basis(o.circuit, y)), y);
    }
  }
}

TEST(Oracle, VerifyChecksRegisterSize) {
  const auto f = parse_dimacs("p cnf 2 1\n1 0\n");
  const auto o = build_oracle(to_3cnf(f));
  const auto other = parse_dimacs("p cnf 3 1\n1 0\n");
  EXPECT_THROW(verify_oracle(o, other), Error);
}

}  // namespace
