#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rnqc/error.hpp"
#include "rnqc/ir/lowering.hpp"
#include "rnqc/sim/state_vector.hpp"
#include "support.hpp"

namespace {

using namespace rnqc;
using namespace rnqc::ir;
using sim::StateVector;

// Runs `lowered` on the extended register and compares its action on every
// logical basis input with `reference`. The logical qubits occupy the low
// indices; everything above starts and must end at the layout's rest value.
void expect_equivalent(const Circuit& reference, const Circuit& lowered, double tol = 1e-12) {
  const std::size_t k = reference.qubit_count();
  ASSERT_GE(lowered.qubit_count(), k);
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t rest = lowered.layout() ? lowered.layout()->rest_basis_index() : 0;
  ASSERT_EQ(rest & mask, 0u);
  for (std::uint64_t x = 0; x <= mask; ++x) {
    StateVector a = StateVector::basis(k, x);
    sim::apply_circuit(a, reference);
    StateVector b = StateVector::basis(lowered.qubit_count(), rest | x);
    sim::apply_circuit(b, lowered);
    for (std::uint64_t y = 0; y < b.dimension(); ++y) {
      const double want = (y & ~mask) == rest ? a.amplitude(y & mask).real() : 0.0;
      ASSERT_NEAR(b.amplitude(y).real(), want, tol) << "input " << x << " output " << y;
    }
  }
}

TEST(LowerX, UsesConstOnePair) {
  RegisterLayout l;
  l.data = {0, 1, 2, 3, 4, 5, 6};
  l.const_one = {7, 8};
  const Circuit c(9, {Gate::x(3)}, l);
  const Circuit out = lower_x(c);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.gates()[0], Gate::ccnot(7, 8, 3));
}

TEST(LowerX, NoXUnchangedAndMissingPairFails) {
  RegisterLayout l;
  l.data = {0};
  l.const_one = {1, 2};
  const Circuit c(3, {Gate::h(0)}, l);
  EXPECT_EQ(lower_x(c), c);
  EXPECT_THROW(lower_x(Circuit(1, {Gate::x(0)})), Error);
}

TEST(LowerX, ExhaustiveFourQubits) {
  const Circuit c(4, {Gate::x(0), Gate::x(3), Gate::h(1), Gate::x(1), Gate::x(2)});
  expect_equivalent(c, lower_to_primitive(c));
}

TEST(LowerZ, IsHXH) {
  RegisterLayout l;
  l.data = {0};
  const Circuit c(1, {Gate::z(0)}, l);
  const Circuit out = lower_z(c);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out.gates()[0], Gate::h(0));
  EXPECT_EQ(out.gates()[1], Gate::x(0));
  EXPECT_EQ(out.gates()[2], Gate::h(0));
  StateVector one = sim::new_state(1, 1);
  sim::apply_circuit(one, out);
  EXPECT_NEAR(one.amplitude(1).real(), -1.0, 1e-15);
  StateVector zero = sim::new_state(1, 0);
  sim::apply_circuit(zero, out);
  EXPECT_NEAR(zero.amplitude(0).real(), 1.0, 1e-15);
  const Circuit primitive = lower_to_primitive(Circuit(1, {Gate::z(0)}));
  EXPECT_TRUE(validate_primitive(primitive));
  EXPECT_EQ(gate_census(primitive).count(GateKind::G), 0u);
}

TEST(LowerNcnot, ThreeControlsUseThreeCcnots) {
  RegisterLayout l;
  l.data = {0, 1, 2, 3};
  l.chain_ancilla = {4};
  const std::vector<Qubit> cs = {0, 1, 2};
  const Circuit c(5, {Gate::ncnot(cs, 3)}, l);
  const Circuit out = lower_ncnot(c);
  EXPECT_EQ(out.size(), 3u);
  EXPECT_EQ(gate_census(out).count(GateKind::CCNOT), 3u);
  EXPECT_EQ(required_chain_ancillas(c), 1u);
}

TEST(LowerNcnot, ExhaustiveUpToSixControls) {
  for (std::size_t controls = 1; controls <= 6; ++controls) {
    std::vector<Qubit> cs(controls);
    for (std::size_t q = 0; q < controls; ++q) cs[q] = q;
    const Circuit c(controls + 1, {Gate::ncnot(cs, controls)});
    const Circuit out = lower_to_primitive(c);
    EXPECT_TRUE(validate_primitive(out));
    expect_equivalent(c, out);
  }
}

TEST(LowerNcnot, InsufficientPoolFails) {
  RegisterLayout l;
  l.data = {0, 1, 2, 3, 4};
  const std::vector<Qubit> cs = {0, 1, 2, 3};
  EXPECT_THROW(lower_ncnot(Circuit(5, {Gate::ncnot(cs, 4)}, l)), Error);
}

TEST(LowerCg, MatrixIsDiagOneOneInvGG) {
  for (double g : {0.5, 2.0, 3.0, 4.0}) {
    const Circuit c(2, {Gate::cg(1, 0, g)});
    const Circuit out = lower_to_primitive(c);
    ASSERT_TRUE(validate_primitive(out));
    const std::uint64_t rest = out.layout()->rest_basis_index();
    const double diag[4] = {1.0, 1.0, 1.0 / g, g};
    for (std::uint64_t col = 0; col < 4; ++col) {
      StateVector s = StateVector::basis(out.qubit_count(), rest | col);
      sim::apply_circuit(s, out);
      for (std::uint64_t row = 0; row < 4; ++row) {
        EXPECT_NEAR(s.amplitude(rest | row).real(), row == col ? diag[col] : 0.0, 1e-12);
      }
    }
  }
}

TEST(LowerCg, RandomRealStatesMatchKernel) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  for (double g : {0.5, 2.0, 3.0}) {
    const Circuit c(2, {Gate::cg(1, 0, g)});
    const Circuit out = lower_to_primitive(c);
    const std::size_t width = out.qubit_count();
    const std::uint64_t rest = out.layout()->rest_basis_index();
    for (int k = 0; k < 200; ++k) {
      std::vector<double> small(4);
      for (auto& a : small) a = normal(rng);
      std::vector<double> big(std::size_t{1} << width, 0.0);
      for (std::uint64_t x = 0; x < 4; ++x) big[rest | x] = small[x];
      StateVector a = StateVector::from_real(small);
      sim::apply_circuit(a, c);
      StateVector b = StateVector::from_real(big);
      sim::apply_circuit(b, out);
      for (std::uint64_t x = 0; x < 4; ++x) {
        ASSERT_NEAR(b.amplitude(rest | x).real(), a.amplitude(x).real(), 1e-12);
      }
    }
  }
}

TEST(LowerToPrimitive, RejectsT) {
  try {
    lower_to_primitive(Circuit(1, {Gate::t(0)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(LowerToPrimitive, PrimitiveInputUnchanged) {
  const Circuit c(3, {Gate::h(0), Gate::ccnot(0, 1, 2), Gate::g(2, 2.0)});
  EXPECT_EQ(lower_to_primitive(c).gates(), c.gates());
  const Circuit once = lower_to_primitive(Circuit(3, {Gate::x(0), Gate::cnot(0, 2), Gate::cg(1, 2, 2.0)}));
  EXPECT_EQ(lower_to_primitive(once), once);
}

TEST(LowerToPrimitive, RandomSoundness) {
  std::mt19937_64 rng(43);
  const std::vector<GateKind> kinds = {GateKind::H,     GateKind::X,     GateKind::Z,
                                       GateKind::CNOT,  GateKind::CCNOT, GateKind::NCNOT,
                                       GateKind::G,     GateKind::CG};
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 6;
    const std::size_t gates = 1 + static_cast<std::size_t>(rng() % 30);
    const Circuit c = test::random_circuit(rng, n, gates, kinds);
    const Circuit out = lower_to_primitive(c);
    ASSERT_TRUE(validate_primitive(out));
    // G factors compound to large magnitudes; scale the tolerance with them.
    expect_equivalent(c, out, 1e-9);
  }
  // Wider registers without NCNOT keep the extended register small.
  const std::vector<GateKind> narrow = {GateKind::H, GateKind::X, GateKind::Z, GateKind::CNOT,
                                        GateKind::CCNOT, GateKind::G, GateKind::CG};
  for (std::size_t n : {7u, 8u}) {
    const Circuit c = test::random_circuit(rng, n, 30, narrow);
    expect_equivalent(c, lower_to_primitive(c), 1e-9);
  }
}

}  // namespace
