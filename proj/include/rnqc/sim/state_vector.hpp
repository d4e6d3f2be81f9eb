#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rnqc/ir/circuit.hpp"
#include "rnqc/rng.hpp"

namespace rnqc::sim {

using Complex = std::complex<double>;

/// Real mode stores `double` amplitudes only; there is no imaginary storage to
/// become nonzero. Complex mode is entered explicitly (to_complex) and is the
/// only mode that accepts T.
enum class Mode { Real, Complex };

/// Register cap, 28 unless the RNQC_MAX_QUBITS environment variable says
/// otherwise.
std::size_t max_qubits();

/// Number of complex amplitude buffers ever allocated by StateVector in this
/// process. The realness checks read it before and after a pipeline.
std::uint64_t complex_buffers_allocated() noexcept;

/// Dense amplitude vector over `num_qubits` qubits.
///
/// Basis convention: bit q of a basis index is the value of qubit q, so
/// qubit 0 is the least significant bit.
///
/// Amplitudes are held as a mantissa array times a shared power of two,
/// amplitude(i) = mantissa[i] * 2^scale_exponent(). G gates grow or shrink the
/// norm geometrically; the exponent absorbs that so the mantissa stays in
/// range. The norm is never renormalized implicitly.
class StateVector {
 public:
  /// Basis state |index>. Throws Resource above max_qubits(), Config when the
  /// index is out of range.
  static StateVector basis(std::size_t num_qubits, std::uint64_t index, Mode mode = Mode::Real);

  /// Builds a state from explicit amplitudes (length must be a power of two).
  static StateVector from_real(std::vector<double> amplitudes);
  static StateVector from_complex(std::vector<Complex> amplitudes);

  StateVector(const StateVector& other);
  StateVector& operator=(const StateVector& other);
  StateVector(StateVector&&) noexcept = default;
  StateVector& operator=(StateVector&&) noexcept = default;

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::uint64_t dimension() const noexcept { return std::uint64_t{1} << num_qubits_; }
  Mode mode() const noexcept { return std::holds_alternative<RealBuffer>(amps_) ? Mode::Real : Mode::Complex; }
  bool is_real() const noexcept { return mode() == Mode::Real; }

  /// Promotes a real state to complex storage. No-op in complex mode.
  void to_complex();

  /// Scaled amplitude at a basis index.
  Complex amplitude(std::uint64_t index) const;
  std::vector<Complex> amplitudes() const;

  /// Raw mantissa views. real_mantissa() throws in complex mode.
  std::span<const double> real_mantissa() const;
  std::span<const Complex> complex_mantissa() const;
  int scale_exponent() const noexcept { return exponent_; }

  /// Squared norm of the mantissa only (scale-free).
  double mantissa_norm_sq() const;

  // Kernel entry points; use apply_gate for validated dispatch.
  void apply_h(ir::Qubit q);
  void apply_x(ir::Qubit q);
  void apply_z(ir::Qubit q);
  void apply_t(ir::Qubit q);
  void apply_controlled_not(std::span<const ir::Qubit> controls, ir::Qubit target);
  void apply_g(std::span<const ir::Qubit> controls, ir::Qubit target, double g);

  /// Multiplies every amplitude by 2^k (exact).
  void scale_by_pow2(int k);
  /// Rebalances mantissa and exponent so the mantissa norm is near 1.
  void rebalance();

  /// Zeroes amplitudes whose qubit bit differs from `bit`.
  void project(ir::Qubit qubit, int bit);
  /// Mass (mantissa units) of the amplitudes with qubit bit == `bit`.
  double mantissa_mass(ir::Qubit qubit, int bit) const;
  /// Unnormalized x-basis masses (|a0+a1|^2/2, |a0-a1|^2/2) summed over pairs.
  std::pair<double, double> x_masses(ir::Qubit qubit) const;
  Complex mantissa_at(std::uint64_t index) const;

  /// For each pair differing in `qubit`, moves the |0> amplitude v to
  /// (a v, b v). Used for single-qubit state preparation.
  void split_zero_branch(ir::Qubit qubit, double a, double b);
  /// Multiplies the mantissa by `factor` and resets the exponent to 0.
  void scale_mantissa(double factor);

 private:
  using RealBuffer = std::vector<double>;
  using ComplexBuffer = std::vector<Complex>;

  StateVector(std::size_t num_qubits, RealBuffer amps);
  StateVector(std::size_t num_qubits, ComplexBuffer amps);

  void check_qubit(ir::Qubit q) const;
  void note_scaling(double factor);

  std::size_t num_qubits_;
  std::variant<RealBuffer, ComplexBuffer> amps_;
  int exponent_ = 0;
  double drift_log2_ = 0.0;
};

struct MeasurementOutcome {
  int value;           ///< 0/1 for z-basis, +1/-1 for x-basis
  double probability;  ///< probability of the observed value before collapse
  bool collapsed;
};

// Free operations. All state-taking functions mutate in place.

StateVector new_state(std::size_t num_qubits, std::uint64_t basis_index);

/// Puts `qubit` (currently |0> with certainty) into
/// (alpha|0> + beta|1>)/sqrt(alpha^2 + beta^2).
void prepare_superposed_qubit(StateVector& state, ir::Qubit qubit, double alpha, double beta);

void apply_gate(StateVector& state, const ir::Gate& gate);
void apply_circuit(StateVector& state, const ir::Circuit& circuit);

/// Follows a single basis index through a circuit of permutation gates
/// (X, CNOT, CCNOT, NCNOT). Throws Config for any other kind.
std::uint64_t evolve_basis(const ir::Circuit& circuit, std::uint64_t index);

/// Squared norm including the scale exponent. Throws Numeric if it does not
/// fit in a double.
double norm_sq(const StateVector& state);
void renormalize(StateVector& state);

std::pair<double, double> probabilities_z(const StateVector& state, ir::Qubit qubit);
/// (P(+1), P(-1)) for an x-basis measurement.
std::pair<double, double> probabilities_x(const StateVector& state, ir::Qubit qubit);

MeasurementOutcome measure_z(StateVector& state, ir::Qubit qubit, CounterRng& rng);
MeasurementOutcome measure_x(StateVector& state, ir::Qubit qubit, CounterRng& rng);

/// Conditions on `qubit == bit`; returns the branch probability and leaves the
/// renormalized branch in `state`. Throws Numeric on a zero-mass branch.
double postselect(StateVector& state, ir::Qubit qubit, int bit);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const StateVector& a, const StateVector& b);
/// Fidelity against a sparse target given as (basis index, amplitude) pairs.
double fidelity(const StateVector& a, std::span<const std::pair<std::uint64_t, Complex>> target);

/// Reduced 2x2 density matrix of one qubit, normalized to unit trace,
/// row-major [rho00, rho01, rho10, rho11].
std::array<Complex, 4> reduced_density(const StateVector& state, ir::Qubit qubit);

}  // namespace rnqc::sim
