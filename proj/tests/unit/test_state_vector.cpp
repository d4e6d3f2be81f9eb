#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rnqc/error.hpp"
#include "rnqc/rng.hpp"
#include "rnqc/sim/state_vector.hpp"
#include "support.hpp"

namespace {

using namespace rnqc;
using namespace rnqc::sim;
using ir::Gate;

const double kS = 1.0 / std::sqrt(2.0);

void expect_amps(const StateVector& s, const std::vector<double>& want, double tol = 1e-12) {
  ASSERT_EQ(s.dimension(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_NEAR(s.amplitude(k).real(), want[k], tol) << "index " << k;
    EXPECT_EQ(s.amplitude(k).imag(), 0.0);
  }
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Invariant;
}

TEST(NewState, BasisStates) {
  expect_amps(new_state(1, 0), {1, 0});
  expect_amps(new_state(3, 5), {0, 0, 0, 0, 0, 1, 0, 0});
  EXPECT_TRUE(new_state(3, 5).is_real());
  EXPECT_EQ(kind_of([] { new_state(2, 4); }), ErrorKind::Config);
  EXPECT_EQ(kind_of([] { new_state(64, 0); }), ErrorKind::Resource);
}

TEST(Prepare, SuperposedQubit) {
  StateVector s = new_state(1, 0);
  prepare_superposed_qubit(s, 0, 1, 1);
  expect_amps(s, {kS, kS});
  StateVector t = new_state(1, 0);
  prepare_superposed_qubit(t, 0, 1, 2);
  expect_amps(t, {1 / std::sqrt(5.0), 2 / std::sqrt(5.0)});
  EXPECT_THROW(prepare_superposed_qubit(t, 0, 1, 0), Error);
  StateVector one = new_state(1, 1);
  EXPECT_THROW(prepare_superposed_qubit(one, 0, 1, 1), Error);
}

TEST(Gates, SpecExamples) {
  StateVector s = new_state(1, 0);
  apply_gate(s, Gate::h(0));
  expect_amps(s, {kS, kS});

  StateVector g = StateVector::from_real({0.3, 0.7});
  apply_gate(g, Gate::g(0, 2.0));
  expect_amps(g, {0.15, 1.4});

  StateVector cg = StateVector::from_real({0.5, 0.5, 0.5, 0.5});
  apply_gate(cg, Gate::cg(1, 0, 2.0));  // control = high bit of |c t>
  expect_amps(cg, {0.5, 0.5, 0.25, 1.0});

  StateVector t = new_state(3, 0b011);  // qubits 0 and 1 set
  apply_gate(t, Gate::ccnot(0, 1, 2));
  expect_amps(t, {0, 0, 0, 0, 0, 0, 0, 1});
}

TEST(Gates, TNeedsComplexMode) {
  StateVector s = new_state(1, 1);
  EXPECT_EQ(kind_of([&] { apply_gate(s, Gate::t(0)); }), ErrorKind::Unsupported);
  s.to_complex();
  apply_gate(s, Gate::t(0));
  EXPECT_NEAR(std::abs(s.amplitude(1) - std::polar(1.0, -M_PI / 4)), 0.0, 1e-15);
}

TEST(Circuits, SpecExamples) {
  StateVector s = new_state(1, 0);
  apply_circuit(s, ir::Circuit(1, {Gate::h(0), Gate::h(0)}));
  expect_amps(s, {1, 0});

  StateVector hgh = new_state(1, 0);
  apply_circuit(hgh, ir::Circuit(1, {Gate::h(0), Gate::g(0, 2.0), Gate::h(0)}));
  expect_amps(hgh, {1.25, -0.75});
  EXPECT_NEAR(norm_sq(hgh), 2.125, 1e-12);

  StateVector e = new_state(2, 3);
  apply_circuit(e, ir::Circuit(2));
  expect_amps(e, {0, 0, 0, 1});

  EXPECT_THROW(apply_circuit(e, ir::Circuit(3)), Error);
}

TEST(Norm, RenormalizeAndZeroState) {
  StateVector s = StateVector::from_real({kS, kS});
  EXPECT_NEAR(norm_sq(s), 1.0, 1e-15);
  StateVector z = StateVector::from_real({0, 0});
  EXPECT_EQ(kind_of([&] { renormalize(z); }), ErrorKind::Numeric);
  StateVector u = StateVector::from_real({1.25, -0.75});
  renormalize(u);
  EXPECT_NEAR(norm_sq(u), 1.0, 1e-15);
}

TEST(Probabilities, SpecExamples) {
  StateVector s = StateVector::from_real({kS, kS});
  apply_gate(s, Gate::g(0, 2.0));
  EXPECT_NEAR(probabilities_z(s, 0).second, 2.0 / 2.125, 1e-12);
  const auto b = probabilities_z(new_state(1, 1), 0);
  EXPECT_EQ(b.first, 0.0);
  EXPECT_EQ(b.second, 1.0);

  EXPECT_NEAR(probabilities_x(new_state(1, 0), 0).first, 0.5, 1e-15);
  EXPECT_NEAR(probabilities_x(StateVector::from_real({kS, kS}), 0).first, 1.0, 1e-15);
  const auto x = probabilities_x(StateVector::from_real({2 / std::sqrt(20.0), 4 / std::sqrt(20.0)}), 0);
  EXPECT_NEAR(x.second, 0.1, 1e-12);
  EXPECT_NEAR(x.first + x.second, 1.0, 1e-12);
}

TEST(Postselect, BranchesAndZeroMass) {
  StateVector s = StateVector::from_real({kS, kS});
  EXPECT_NEAR(postselect(s, 0, 1), 0.5, 1e-15);
  expect_amps(s, {0, 1});
  StateVector z = new_state(1, 0);
  EXPECT_EQ(kind_of([&] { postselect(z, 0, 1); }), ErrorKind::Numeric);
}

TEST(Measure, EmpiricalFrequencyMatches) {
  StateVector base = StateVector::from_real({kS, kS});
  apply_gate(base, Gate::g(0, 2.0));
  const double p1 = probabilities_z(base, 0).second;
  CounterRng rng(11);
  const int k = 10000;
  int ones = 0;
  for (int j = 0; j < k; ++j) {
    StateVector s = base;
    const auto out = measure_z(s, 0, rng);
    ones += out.value;
    EXPECT_NEAR(probabilities_z(s, 0).second, static_cast<double>(out.value), 1e-15);
  }
  EXPECT_NEAR(static_cast<double>(ones) / k, p1, 4 * std::sqrt(p1 * (1 - p1) / k));
  EXPECT_NEAR(static_cast<double>(ones) / k, 0.94118, 0.01);
}

TEST(Measure, XBasisOutcomeSigns) {
  CounterRng rng(5);
  StateVector plus = StateVector::from_real({kS, kS});
  EXPECT_EQ(measure_x(plus, 0, rng).value, +1);
  StateVector minus = StateVector::from_real({kS, -kS});
  EXPECT_EQ(measure_x(minus, 0, rng).value, -1);
}

TEST(Fidelity, SpecExamples) {
  const StateVector a = StateVector::from_real({0.6, 0.8});
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(new_state(1, 0), new_state(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(fidelity(new_state(1, 0), StateVector::from_real({kS, kS})), 0.5, 1e-15);
  EXPECT_THROW(fidelity(new_state(1, 0), new_state(2, 0)), Error);
}

// Independent dense-matrix oracle for the properties below.
std::vector<Complex> reference_apply(const std::vector<Complex>& in, const Gate& g) {
  std::vector<Complex> out(in.size(), 0.0);
  auto bit = [](std::uint64_t x, std::size_t q) { return (x >> q) & 1; };
  for (std::uint64_t x = 0; x < in.size(); ++x) {
    const auto ops = g.operands();
    bool controls_on = true;
    for (auto c : g.controls()) controls_on = controls_on && bit(x, c);
    const std::size_t t = g.target();
    switch (g.kind()) {
      case ir::GateKind::H: {
        const std::uint64_t x0 = x & ~(std::uint64_t{1} << t);
        const std::uint64_t x1 = x0 | (std::uint64_t{1} << t);
        out[x0] += in[x] * kS;
        out[x1] += in[x] * (bit(x, t) ? -kS : kS);
        break;
      }
      case ir::GateKind::Z: out[x] += in[x] * (bit(x, t) ? -1.0 : 1.0); break;
      case ir::GateKind::T: out[x] += in[x] * (bit(x, t) ? std::polar(1.0, -M_PI / 4) : 1.0); break;
      case ir::GateKind::G: out[x] += in[x] * (bit(x, t) ? g.param() : 1.0 / g.param()); break;
      case ir::GateKind::CG:
        out[x] += in[x] * (!controls_on ? 1.0 : bit(x, t) ? g.param() : 1.0 / g.param());
        break;
      default:  // X, CNOT, CCNOT, NCNOT
        out[controls_on ? x ^ (std::uint64_t{1} << t) : x] += in[x];
    }
    (void)ops;
  }
  return out;
}

TEST(Properties, KernelsMatchDenseReference) {
  std::mt19937_64 rng(17);
  const std::vector<ir::GateKind> kinds(std::begin(ir::kAllGateKinds), std::end(ir::kAllGateKinds));
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 1 + k % 5;
    const ir::Circuit c = test::random_circuit(rng, n, 20, kinds);
    StateVector s = StateVector::basis(n, rng() % (1u << n), Mode::Complex);
    std::vector<Complex> ref = s.amplitudes();
    for (const auto& g : c.gates()) {
      apply_gate(s, g);
      ref = reference_apply(ref, g);
    }
    for (std::size_t x = 0; x < ref.size(); ++x) {
      EXPECT_NEAR(std::abs(s.amplitude(x) - ref[x]), 0.0, 1e-9 * std::max(1.0, std::abs(ref[x])));
    }
  }
}

TEST(Properties, UnitaryCircuitsPreserveNorm) {
  std::mt19937_64 rng(23);
  const std::vector<ir::GateKind> kinds = {ir::GateKind::H,    ir::GateKind::X,     ir::GateKind::Z,
                                           ir::GateKind::T,    ir::GateKind::CNOT,  ir::GateKind::CCNOT};
  for (int k = 0; k < 10; ++k) {
    const std::size_t n = 3 + k % 8;
    StateVector s = StateVector::basis(n, 0, Mode::Complex);
    apply_circuit(s, test::random_circuit(rng, n, 100, kinds));
    EXPECT_NEAR(norm_sq(s), 1.0, 1e-9);
  }
}

TEST(Properties, GThenInverseRestores) {
  StateVector s = StateVector::from_real({0.1, -0.3, 0.7, 0.2});
  const StateVector before = s;
  for (double g : {0.5, 2.0, 3.0, 1e3}) {
    apply_gate(s, Gate::g(1, g));
    apply_gate(s, Gate::g(1, 1.0 / g));
    for (std::uint64_t x = 0; x < 4; ++x) {
      EXPECT_NEAR(s.amplitude(x).real(), before.amplitude(x).real(),
                  1e-12 * std::abs(before.amplitude(x).real()));
    }
  }
}

TEST(Properties, RealClosureIsStructural) {
  std::mt19937_64 rng(29);
  const std::uint64_t before = complex_buffers_allocated();
  const std::vector<ir::GateKind> kinds = {ir::GateKind::H,    ir::GateKind::X,     ir::GateKind::Z,
                                           ir::GateKind::CNOT, ir::GateKind::CCNOT, ir::GateKind::G,
                                           ir::GateKind::CG};
  for (int k = 0; k < 20; ++k) {
    StateVector s = new_state(5, rng() % 32);
    apply_circuit(s, test::random_circuit(rng, 5, 40, kinds));
    EXPECT_TRUE(s.is_real());
    EXPECT_NO_THROW((void)s.real_mantissa());
  }
  EXPECT_EQ(complex_buffers_allocated(), before);
}

TEST(Properties, LargeGrowthIsTrackedByExponent) {
  StateVector s = new_state(1, 1);
  for (int k = 0; k < 2000; ++k) apply_gate(s, Gate::g(0, 2.0));
  EXPECT_EQ(s.mantissa_norm_sq() > 0.0, true);
  EXPECT_TRUE(std::isfinite(s.mantissa_norm_sq()));
  EXPECT_EQ(kind_of([&] { (void)norm_sq(s); }), ErrorKind::Numeric);
  EXPECT_NEAR(probabilities_z(s, 0).second, 1.0, 1e-15);
}

TEST(Properties, Deterministic) {
  std::mt19937_64 rng(31);
  const std::vector<ir::GateKind> kinds(std::begin(ir::kAllGateKinds), std::end(ir::kAllGateKinds));
  const auto c = test::random_circuit(rng, 8, 60, kinds);
  StateVector a = StateVector::basis(8, 3, Mode::Complex), b = StateVector::basis(8, 3, Mode::Complex);
  apply_circuit(a, c);
  apply_circuit(b, c);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
}

}  // namespace
