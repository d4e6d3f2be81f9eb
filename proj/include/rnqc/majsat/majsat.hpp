#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rnqc/cnf/oracle.hpp"
#include "rnqc/sim/state_vector.hpp"

namespace rnqc::majsat {

enum class RunMode { Exact, Sampled };
enum class Lowering { Semantic, Primitive };
/// Boost flips the non-Hermitian qubit to |1> first, so an active controlled
/// G multiplies its branch by g. Literal leaves it at |0> (factor 1/g).
enum class Orientation { Boost, Literal };

/// User-facing options. Unset fields take their n-dependent defaults in
/// resolve().
struct MajsatConfig {
  double g = 2.0;
  std::optional<std::size_t> r;
  std::optional<std::size_t> r_prime;
  double r_scale = 1.0;
  std::optional<int> i_min;
  std::optional<int> i_max;
  std::optional<std::size_t> sets;
  std::optional<std::size_t> runs_per_set;
  std::size_t runs_factor = 8;  ///< runs_per_set default is runs_factor * n
  std::uint64_t seed = 0;
  RunMode mode = RunMode::Exact;
  Lowering lowering = Lowering::Semantic;
  Orientation orientation = Orientation::Boost;
  bool polarity_fix = true;
  bool checkpoints = true;
  /// Worker threads over the i sweep. Results do not depend on it.
  std::size_t jobs = 1;
};

/// MajsatConfig with every default filled in for a given n.
struct ResolvedConfig {
  double g;
  std::size_t r;
  std::size_t r_prime;
  double r_scale;
  int i_min;
  int i_max;
  std::size_t sets;
  std::size_t runs_per_set;
  std::uint64_t seed;
  RunMode mode;
  Lowering lowering;
  Orientation orientation;
  bool polarity_fix;
  bool checkpoints;
  std::size_t jobs;
};

/// ceil(n ln 2 / ln g * r_scale), at least 1.
std::size_t default_repetitions(std::size_t n, double g, double r_scale);

/// Validates and fills defaults. Throws ErrorKind::Config.
ResolvedConfig resolve(const MajsatConfig& config, std::size_t n);

std::string to_string(RunMode mode);
std::string to_string(Lowering lowering);
std::string to_string(Orientation orientation);
nlohmann::json config_to_json(const ResolvedConfig& config);

/// The full circuit, kept in segments so that intermediate states can be
/// inspected.
///
/// Register: work | aux_var | clause | oracle | non_hermitian | bhr, then in
/// primitive mode const_one (2) | helper_one | chain pool.
struct MajsatPlan {
  cnf::CnfFormula formula;
  cnf::ThreeCnf three_cnf;
  cnf::OracleArtifact oracle;
  ir::RegisterLayout layout;
  std::size_t qubit_count = 0;
  /// Orientation flip, Hadamards on work, oracle, then H and X on every
  /// x-dependent qubit (work, aux, clause).
  ir::Circuit preparation;
  /// One amplification block: a controlled G from each x-dependent qubit onto
  /// the non-Hermitian qubit. Applied config.r times.
  ir::Circuit amplification;
  /// H on the oracle, BHR-controlled NOT onto the oracle, then r' controlled
  /// G gates from the oracle onto the non-Hermitian qubit.
  ir::Circuit readout;
  ResolvedConfig config;

  std::size_t n() const { return formula.num_vars; }
  /// Qubits mixed by the amplification blocks.
  std::vector<ir::Qubit> amplified_qubits() const;
  /// The whole circuit as one gate list (BHR preparation excluded).
  ir::Circuit full_circuit() const;
};

MajsatPlan plan(const cnf::CnfFormula& formula, const MajsatConfig& config);

struct SetResult {
  std::size_t minus_count = 0;
  std::size_t plus_count = 0;
  std::size_t discarded = 0;  ///< shots whose oracle measurement gave 0
  bool success = false;
};

struct IEntry {
  int i = 0;
  double beta_over_alpha = 1.0;
  std::optional<double> p_minus;
  std::optional<double> p_plus;
  /// Probability of the oracle reading 0 (the postselected-away mass).
  double discarded_mass = 0.0;
  std::optional<double> bhr_fidelity;
  std::vector<SetResult> set_results;
  bool all_sets_success = false;
};

struct MajsatReport {
  std::size_t n = 0;
  std::size_t qubit_count = 0;
  ResolvedConfig config;
  std::vector<IEntry> per_i;
  bool verdict = false;
  std::optional<std::uint64_t> reference_s;
  /// "amplified_state_fidelity" (state before readout vs the ideal
  /// amplified state) and "bhr_state_fidelity_min" (worst i).
  std::map<std::string, double> checkpoints;
  /// Largest postselected-away probability over the i sweep.
  double discarded_mass = 0.0;
  /// Sampled mode: shots discarded / shots taken.
  std::optional<double> discarded_fraction;
  /// Sampled mode: true when some set had no strict majority either way.
  bool low_confidence = false;
};

/// State after preparation and `r` amplification blocks, BHR at |0>.
sim::StateVector amplified_state(const MajsatPlan& plan, std::size_t r);
/// State just before the oracle measurement for BHR ratio 2^i.
sim::StateVector final_state(const MajsatPlan& plan, int i);

/// The ideal amplified state as sparse amplitudes:
/// ((N-s)|0_o> + s|1_o>) with every amplified qubit at 1, the non-Hermitian
/// qubit at its orientation value and ancillas at rest.
std::vector<std::pair<std::uint64_t, sim::Complex>> predicted_amplified_state(
    const MajsatPlan& plan, std::uint64_t s);
/// Ideal postselected BHR state alpha(N-2s)|0> + beta N|1>, alpha = 1,
/// beta = 2^i (not normalized).
std::pair<double, double> predicted_bhr_state(std::size_t n, std::uint64_t s, int i);

/// Fidelity of amplified_state(plan, r) with the ideal, for r = 1..r_max.
std::vector<double> amplification_profile(const MajsatPlan& plan, std::size_t r_max);

MajsatReport run_exact(const MajsatPlan& plan);
MajsatReport run_sampled(const MajsatPlan& plan);
MajsatReport run(const MajsatPlan& plan);

/// True iff some i had every set succeed. Throws Config on an empty sweep.
bool decide(const MajsatReport& report);

nlohmann::json report_to_json(const MajsatReport& report);

}  // namespace rnqc::majsat
