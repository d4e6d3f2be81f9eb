#include "rnqc/sim/state_vector.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "rnqc/error.hpp"

namespace rnqc::sim {

namespace {

std::atomic<std::uint64_t> g_complex_buffers{0};

constexpr std::size_t kHardQubitLimit = 40;
constexpr double kRebalanceDriftLog2 = 64.0;
constexpr double kNormLowLog2 = -64.0;
constexpr double kNormHighLog2 = 64.0;

inline std::uint64_t bit(ir::Qubit q) { return std::uint64_t{1} << q; }

// Visits every index with bit q clear; f(i0, i1) with i1 = i0 | bit(q).
template <class F>
void for_each_pair(std::uint64_t dim, ir::Qubit q, F&& f) {
  const std::uint64_t stride = bit(q);
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * stride) {
    for (std::uint64_t i0 = hi; i0 < hi + stride; ++i0) f(i0, i0 | stride);
  }
}

double abs_sq(double v) { return v * v; }
double abs_sq(const Complex& v) { return std::norm(v); }

}  // namespace

std::size_t max_qubits() {
  const char* env = std::getenv("RNQC_MAX_QUBITS");
  if (env == nullptr || *env == '\0') return 28;
  char* end = nullptr;
  const unsigned long value = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || value == 0 || value > kHardQubitLimit) {
    throw Error(ErrorKind::Config, std::string("RNQC_MAX_QUBITS must be an integer in [1, ") +
                                       std::to_string(kHardQubitLimit) + "]");
  }
  return value;
}

std::uint64_t complex_buffers_allocated() noexcept { return g_complex_buffers.load(); }

StateVector::StateVector(std::size_t num_qubits, RealBuffer amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector::StateVector(std::size_t num_qubits, ComplexBuffer amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  ++g_complex_buffers;
}

StateVector::StateVector(const StateVector& other)
    : num_qubits_(other.num_qubits_),
      amps_(other.amps_),
      exponent_(other.exponent_),
      drift_log2_(other.drift_log2_) {
  if (!is_real()) ++g_complex_buffers;
}

StateVector& StateVector::operator=(const StateVector& other) {
  if (this != &other) {
    num_qubits_ = other.num_qubits_;
    amps_ = other.amps_;
    exponent_ = other.exponent_;
    drift_log2_ = other.drift_log2_;
    if (!is_real()) ++g_complex_buffers;
  }
  return *this;
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index, Mode mode) {
  const std::size_t cap = max_qubits();
  if (num_qubits > cap) {
    throw Error(ErrorKind::Resource, "register of " + std::to_string(num_qubits) +
                                         " qubits exceeds the cap of " + std::to_string(cap) +
                                         " (RNQC_MAX_QUBITS)");
  }
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (index >= dim) {
    throw Error(ErrorKind::Config, "basis index " + std::to_string(index) + " out of range for " +
                                       std::to_string(num_qubits) + " qubits");
  }
  if (mode == Mode::Real) {
    RealBuffer amps(dim, 0.0);
    amps[index] = 1.0;
    return StateVector(num_qubits, std::move(amps));
  }
  ComplexBuffer amps(dim, Complex{0.0, 0.0});
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

namespace {

std::size_t qubits_for_length(std::size_t length) {
  if (length == 0 || !std::has_single_bit(length)) {
    throw Error(ErrorKind::Config, "amplitude count must be a power of two");
  }
  const std::size_t n = static_cast<std::size_t>(std::countr_zero(length));
  if (n > max_qubits()) throw Error(ErrorKind::Resource, "register exceeds the qubit cap");
  return n;
}

}  // namespace

StateVector StateVector::from_real(std::vector<double> amplitudes) {
  const std::size_t n = qubits_for_length(amplitudes.size());
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::from_complex(std::vector<Complex> amplitudes) {
  const std::size_t n = qubits_for_length(amplitudes.size());
  return StateVector(n, std::move(amplitudes));
}

void StateVector::to_complex() {
  if (!is_real()) return;
  const RealBuffer& re = std::get<RealBuffer>(amps_);
  ComplexBuffer c(re.begin(), re.end());
  amps_ = std::move(c);
  ++g_complex_buffers;
}

Complex StateVector::amplitude(std::uint64_t index) const {
  if (index >= dimension()) throw Error(ErrorKind::Config, "amplitude index out of range");
  return std::visit(
      [&](const auto& buf) {
        return Complex(std::ldexp(Complex(buf[index]).real(), exponent_),
                       std::ldexp(Complex(buf[index]).imag(), exponent_));
      },
      amps_);
}

std::vector<Complex> StateVector::amplitudes() const {
  std::vector<Complex> out(dimension());
  for (std::uint64_t i = 0; i < dimension(); ++i) out[i] = amplitude(i);
  return out;
}

std::span<const double> StateVector::real_mantissa() const {
  if (!is_real()) throw Error(ErrorKind::Invariant, "state is in complex mode");
  return std::get<RealBuffer>(amps_);
}

std::span<const Complex> StateVector::complex_mantissa() const {
  if (is_real()) throw Error(ErrorKind::Invariant, "state is in real mode");
  return std::get<ComplexBuffer>(amps_);
}

double StateVector::mantissa_norm_sq() const {
  return std::visit(
      [](const auto& buf) {
        double total = 0.0;
        for (const auto& a : buf) total += abs_sq(a);
        return total;
      },
      amps_);
}

void StateVector::check_qubit(ir::Qubit q) const {
  if (q >= num_qubits_) {
    throw Error(ErrorKind::Config, "qubit " + std::to_string(q) + " outside register of " +
                                       std::to_string(num_qubits_));
  }
}

void StateVector::apply_h(ir::Qubit q) {
  check_qubit(q);
  constexpr double s = std::numbers::sqrt2 / 2.0;
  std::visit(
      [&](auto& buf) {
        for_each_pair(dimension(), q, [&](std::uint64_t i0, std::uint64_t i1) {
          const auto a0 = buf[i0];
          const auto a1 = buf[i1];
          buf[i0] = (a0 + a1) * s;
          buf[i1] = (a0 - a1) * s;
        });
      },
      amps_);
}

void StateVector::apply_x(ir::Qubit q) {
  check_qubit(q);
  std::visit(
      [&](auto& buf) {
        for_each_pair(dimension(), q,
                      [&](std::uint64_t i0, std::uint64_t i1) { std::swap(buf[i0], buf[i1]); });
      },
      amps_);
}

void StateVector::apply_z(ir::Qubit q) {
  check_qubit(q);
  std::visit(
      [&](auto& buf) {
        for_each_pair(dimension(), q, [&](std::uint64_t, std::uint64_t i1) { buf[i1] = -buf[i1]; });
      },
      amps_);
}

void StateVector::apply_t(ir::Qubit q) {
  check_qubit(q);
  if (is_real()) {
    throw Error(ErrorKind::Unsupported, "T requires a complex-mode state");
  }
  // T = e^{-i pi/8} diag(e^{i pi/8}, e^{-i pi/8}) = diag(1, e^{-i pi/4}).
  const Complex phase = std::polar(1.0, -std::numbers::pi / 4.0);
  auto& buf = std::get<ComplexBuffer>(amps_);
  for_each_pair(dimension(), q, [&](std::uint64_t, std::uint64_t i1) { buf[i1] *= phase; });
}

void StateVector::apply_controlled_not(std::span<const ir::Qubit> controls, ir::Qubit target) {
  check_qubit(target);
  std::uint64_t cmask = 0;
  for (ir::Qubit c : controls) {
    check_qubit(c);
    cmask |= bit(c);
  }
  std::visit(
      [&](auto& buf) {
        for_each_pair(dimension(), target, [&](std::uint64_t i0, std::uint64_t i1) {
          if ((i0 & cmask) == cmask) std::swap(buf[i0], buf[i1]);
        });
      },
      amps_);
}

void StateVector::apply_g(std::span<const ir::Qubit> controls, ir::Qubit target, double g) {
  check_qubit(target);
  if (!std::isfinite(g) || g <= 0.0) throw Error(ErrorKind::Config, "G parameter must be positive");
  std::uint64_t cmask = 0;
  for (ir::Qubit c : controls) {
    check_qubit(c);
    cmask |= bit(c);
  }
  const double down = 1.0 / g;
  std::visit(
      [&](auto& buf) {
        for_each_pair(dimension(), target, [&](std::uint64_t i0, std::uint64_t i1) {
          if ((i0 & cmask) == cmask) {
            buf[i0] *= down;
            buf[i1] *= g;
          }
        });
      },
      amps_);
  note_scaling(g);
}

void StateVector::note_scaling(double factor) {
  drift_log2_ += std::abs(std::log2(factor));
  if (drift_log2_ >= kRebalanceDriftLog2) rebalance();
}

void StateVector::scale_by_pow2(int k) {
  std::visit(
      [&](auto& buf) {
        for (auto& a : buf) {
          if constexpr (std::is_same_v<std::decay_t<decltype(a)>, double>) {
            a = std::ldexp(a, k);
          } else {
            a = Complex(std::ldexp(a.real(), k), std::ldexp(a.imag(), k));
          }
        }
      },
      amps_);
}

void StateVector::rebalance() {
  drift_log2_ = 0.0;
  const double ns = mantissa_norm_sq();
  if (!std::isfinite(ns)) throw Error(ErrorKind::Numeric, "amplitude overflow");
  if (ns == 0.0) throw Error(ErrorKind::Numeric, "state vanished (all amplitudes zero)");
  const double half_log = 0.5 * std::log2(ns);
  if (2.0 * half_log > kNormHighLog2 || 2.0 * half_log < kNormLowLog2) {
    const int k = static_cast<int>(std::lround(half_log));
    scale_by_pow2(-k);
    exponent_ += k;
  }
}

void StateVector::project(ir::Qubit qubit, int b) {
  check_qubit(qubit);
  std::visit(
      [&](auto& buf) {
        using T = std::decay_t<decltype(buf[0])>;
        for_each_pair(dimension(), qubit, [&](std::uint64_t i0, std::uint64_t i1) {
          buf[b == 0 ? i1 : i0] = T{};
        });
      },
      amps_);
}

double StateVector::mantissa_mass(ir::Qubit qubit, int b) const {
  check_qubit(qubit);
  return std::visit(
      [&](const auto& buf) {
        double total = 0.0;
        for_each_pair(dimension(), qubit, [&](std::uint64_t i0, std::uint64_t i1) {
          total += abs_sq(buf[b == 0 ? i0 : i1]);
        });
        return total;
      },
      amps_);
}


void StateVector::split_zero_branch(ir::Qubit q, double a, double b) {
  check_qubit(q);
  std::visit(
      [&](auto& buf) {
        for_each_pair(dimension(), q, [&](std::uint64_t i0, std::uint64_t i1) {
          const auto v = buf[i0];
          buf[i0] = v * a;
          buf[i1] = v * b;
        });
      },
      amps_);
}

void StateVector::scale_mantissa(double factor) {
  std::visit([&](auto& buf) { for (auto& v : buf) v *= factor; }, amps_);
  exponent_ = 0;
  drift_log2_ = 0.0;
}

Complex StateVector::mantissa_at(std::uint64_t index) const {
  return std::visit([&](const auto& buf) { return Complex(buf[index]); }, amps_);
}

std::pair<double, double> StateVector::x_masses(ir::Qubit q) const {
  check_qubit(q);
  return std::visit(
      [&](const auto& buf) {
        double plus = 0.0;
        double minus = 0.0;
        for_each_pair(dimension(), q, [&](std::uint64_t i0, std::uint64_t i1) {
          plus += abs_sq(buf[i0] + buf[i1]);
          minus += abs_sq(buf[i0] - buf[i1]);
        });
        return std::pair<double, double>(plus / 2.0, minus / 2.0);
      },
      amps_);
}

// ---------------------------------------------------------------------------

StateVector new_state(std::size_t num_qubits, std::uint64_t basis_index) {
  return StateVector::basis(num_qubits, basis_index, Mode::Real);
}

void prepare_superposed_qubit(StateVector& state, ir::Qubit qubit, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::Config, "superposition coefficients must be finite and positive");
  }
  if (state.mantissa_mass(qubit, 1) != 0.0) {
    throw Error(ErrorKind::Config, "qubit " + std::to_string(qubit) + " is not in a definite |0>");
  }
  const double norm = std::hypot(alpha, beta);
  state.split_zero_branch(qubit, alpha / norm, beta / norm);
}

void apply_gate(StateVector& state, const ir::Gate& gate) {
  using ir::GateKind;
  switch (gate.kind()) {
    case GateKind::H: state.apply_h(gate.target()); break;
    case GateKind::X: state.apply_x(gate.target()); break;
    case GateKind::Z: state.apply_z(gate.target()); break;
    case GateKind::T: state.apply_t(gate.target()); break;
    case GateKind::CNOT:
    case GateKind::CCNOT:
    case GateKind::NCNOT: state.apply_controlled_not(gate.controls(), gate.target()); break;
    case GateKind::G:
    case GateKind::CG: state.apply_g(gate.controls(), gate.target(), gate.param()); break;
  }
}

void apply_circuit(StateVector& state, const ir::Circuit& circuit) {
  if (circuit.qubit_count() != state.num_qubits()) {
    throw Error(ErrorKind::Config, "circuit has " + std::to_string(circuit.qubit_count()) +
                                       " qubits, state has " + std::to_string(state.num_qubits()));
  }
  for (const ir::Gate& gate : circuit.gates()) apply_gate(state, gate);
}

std::uint64_t evolve_basis(const ir::Circuit& circuit, std::uint64_t index) {
  for (const ir::Gate& gate : circuit.gates()) {
    if (!gate.is_permutation()) {
      throw Error(ErrorKind::Config, std::string("evolve_basis: ") +
                                         std::string(ir::to_string(gate.kind())) +
                                         " is not a permutation gate");
    }
    std::uint64_t cmask = 0;
    for (ir::Qubit c : gate.controls()) cmask |= bit(c);
    if ((index & cmask) == cmask) index ^= bit(gate.target());
  }
  return index;
}

double norm_sq(const StateVector& state) {
  const double ns = std::ldexp(state.mantissa_norm_sq(), 2 * state.scale_exponent());
  if (!std::isfinite(ns)) throw Error(ErrorKind::Numeric, "squared norm overflows a double");
  return ns;
}

void renormalize(StateVector& state) {
  const double ns = state.mantissa_norm_sq();
  if (ns == 0.0) throw Error(ErrorKind::Numeric, "cannot renormalize the zero state");
  state.scale_mantissa(1.0 / std::sqrt(ns));
}

namespace {

double checked_mass(const StateVector& state) {
  const double ns = state.mantissa_norm_sq();
  if (ns == 0.0) throw Error(ErrorKind::Numeric, "zero state has no measurement distribution");
  return ns;
}

}  // namespace

std::pair<double, double> probabilities_z(const StateVector& state, ir::Qubit qubit) {
  const double m0 = state.mantissa_mass(qubit, 0);
  const double m1 = state.mantissa_mass(qubit, 1);
  const double total = m0 + m1;
  if (total == 0.0) throw Error(ErrorKind::Numeric, "zero state has no measurement distribution");
  return {m0 / total, m1 / total};
}

std::pair<double, double> probabilities_x(const StateVector& state, ir::Qubit qubit) {
  const auto [plus, minus] = state.x_masses(qubit);
  const double total = plus + minus;
  if (total == 0.0) throw Error(ErrorKind::Numeric, "zero state has no measurement distribution");
  return {plus / total, minus / total};
}

MeasurementOutcome measure_z(StateVector& state, ir::Qubit qubit, CounterRng& rng) {
  const auto [p0, p1] = probabilities_z(state, qubit);
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  state.project(qubit, outcome);
  renormalize(state);
  return {outcome, outcome == 0 ? p0 : p1, true};
}

MeasurementOutcome measure_x(StateVector& state, ir::Qubit qubit, CounterRng& rng) {
  state.apply_h(qubit);
  MeasurementOutcome z = measure_z(state, qubit, rng);
  state.apply_h(qubit);
  return {z.value == 0 ? +1 : -1, z.probability, true};
}

double postselect(StateVector& state, ir::Qubit qubit, int b) {
  if (b != 0 && b != 1) throw Error(ErrorKind::Config, "postselect bit must be 0 or 1");
  const double total = checked_mass(state);
  const double kept = state.mantissa_mass(qubit, b);
  if (kept == 0.0) {
    throw Error(ErrorKind::Numeric, "postselection on a zero-mass branch (qubit " +
                                        std::to_string(qubit) + " = " + std::to_string(b) + ")");
  }
  state.project(qubit, b);
  renormalize(state);
  return kept / total;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw Error(ErrorKind::Config, "fidelity between registers of different size");
  }
  const double na = checked_mass(a);
  const double nb = checked_mass(b);
  Complex overlap{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.dimension(); ++i) {
    overlap += std::conj(a.mantissa_at(i)) * b.mantissa_at(i);
  }
  return std::norm(overlap) / (na * nb);
}

double fidelity(const StateVector& a, std::span<const std::pair<std::uint64_t, Complex>> target) {
  const double na = checked_mass(a);
  double nt = 0.0;
  Complex overlap{0.0, 0.0};
  for (const auto& [index, amp] : target) {
    if (index >= a.dimension()) throw Error(ErrorKind::Config, "target index out of range");
    nt += std::norm(amp);
    overlap += std::conj(a.mantissa_at(index)) * amp;
  }
  if (nt == 0.0) throw Error(ErrorKind::Numeric, "fidelity against the zero state");
  return std::norm(overlap) / (na * nt);
}

std::array<Complex, 4> reduced_density(const StateVector& state, ir::Qubit qubit) {
  const double total = checked_mass(state);
  std::array<Complex, 4> rho{};
  const std::uint64_t stride = std::uint64_t{1} << qubit;
  if (qubit >= state.num_qubits()) throw Error(ErrorKind::Config, "qubit out of range");
  for (std::uint64_t hi = 0; hi < state.dimension(); hi += 2 * stride) {
    for (std::uint64_t i0 = hi; i0 < hi + stride; ++i0) {
      const Complex a0 = state.mantissa_at(i0);
      const Complex a1 = state.mantissa_at(i0 | stride);
      rho[0] += a0 * std::conj(a0);
      rho[1] += a0 * std::conj(a1);
      rho[2] += a1 * std::conj(a0);
      rho[3] += a1 * std::conj(a1);
    }
  }
  for (auto& r : rho) r /= total;
  return rho;
}

}  // namespace rnqc::sim
