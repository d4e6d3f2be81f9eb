#include "rnqc/majsat/majsat.hpp"

#include <cmath>
#include <string>

#include "rnqc/error.hpp"
#include "rnqc/ir/lowering.hpp"
#include "rnqc/parallel.hpp"

namespace rnqc::majsat {

using ir::Gate;
using ir::Qubit;

namespace {

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

std::uint64_t bit(Qubit q) { return std::uint64_t{1} << q; }

// Lowers one segment against the plan's fixed layout; the layout already holds
// every ancilla, so lower_to_primitive does not grow the register.
ir::Circuit lower_segment(const ir::Circuit& segment) {
  ir::Circuit lowered = ir::lower_to_primitive(segment);
  if (lowered.qubit_count() != segment.qubit_count()) {
    throw Error(ErrorKind::Invariant, "segment lowering grew the register");
  }
  return lowered;
}

double bhr_fidelity(const sim::StateVector& state, Qubit bhr, std::pair<double, double> ideal) {
  const double norm = std::hypot(ideal.first, ideal.second);
  const double a = ideal.first / norm;
  const double b = ideal.second / norm;
  const auto rho = sim::reduced_density(state, bhr);
  return (a * a * rho[0] + a * b * (rho[1] + rho[2]) + b * b * rho[3]).real();
}

}  // namespace

std::size_t default_repetitions(std::size_t n, double g, double r_scale) {
  const double raw = static_cast<double>(n) * std::log(2.0) / std::log(g) * r_scale;
  // Guard against ceil(4.0000000000000001) style rounding up.
  const double rounded = std::ceil(raw - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(rounded));
}

ResolvedConfig resolve(const MajsatConfig& config, std::size_t n) {
  if (!std::isfinite(config.g) || !(config.g > 1.0)) {
    config_fail("invalid g " + std::to_string(config.g) + " (must exceed 1)");
  }
  if (!std::isfinite(config.r_scale) || !(config.r_scale > 0.0)) {
    config_fail("r-scale must be positive");
  }
  ResolvedConfig out{};
  out.g = config.g;
  out.r_scale = config.r_scale;
  out.r = config.r.value_or(default_repetitions(n, config.g, config.r_scale));
  out.r_prime = config.r_prime.value_or(default_repetitions(n, config.g, config.r_scale));
  if (out.r < 1 || out.r_prime < 1) config_fail("r and r' must be at least 1");
  out.i_min = config.i_min.value_or(-static_cast<int>(n));
  out.i_max = config.i_max.value_or(static_cast<int>(n));
  if (out.i_min > out.i_max) config_fail("empty i range: i-min exceeds i-max");
  if (std::max(std::abs(out.i_min), std::abs(out.i_max)) > 500) {
    config_fail("|i| above 500 overflows the BHR ratio 2^i");
  }
  out.sets = config.sets.value_or(std::max<std::size_t>(1, n));
  out.runs_per_set =
      config.runs_per_set.value_or(config.runs_factor * std::max<std::size_t>(1, n));
  if (out.sets < 1 || out.runs_per_set < 1) config_fail("sets and runs must be at least 1");
  out.seed = config.seed;
  out.mode = config.mode;
  out.lowering = config.lowering;
  out.orientation = config.orientation;
  out.polarity_fix = config.polarity_fix;
  out.checkpoints = config.checkpoints;
  out.jobs = std::max<std::size_t>(1, config.jobs);
  return out;
}

std::string to_string(RunMode mode) { return mode == RunMode::Exact ? "exact" : "sampled"; }
std::string to_string(Lowering lowering) {
  return lowering == Lowering::Semantic ? "semantic" : "primitive";
}
std::string to_string(Orientation orientation) {
  return orientation == Orientation::Boost ? "boost" : "literal";
}

nlohmann::json config_to_json(const ResolvedConfig& c) {
  return {{"g", c.g},
          {"r", c.r},
          {"r_prime", c.r_prime},
          {"r_scale", c.r_scale},
          {"i_min", c.i_min},
          {"i_max", c.i_max},
          {"sets", c.sets},
          {"runs_per_set", c.runs_per_set},
          {"seed", c.seed},
          {"mode", to_string(c.mode)},
          {"lowering", to_string(c.lowering)},
          {"g_orientation", to_string(c.orientation)},
          {"polarity_fix", c.polarity_fix}};
}

std::vector<Qubit> MajsatPlan::amplified_qubits() const {
  std::vector<Qubit> out = layout.work;
  out.insert(out.end(), layout.aux_var.begin(), layout.aux_var.end());
  out.insert(out.end(), layout.clause.begin(), layout.clause.end());
  return out;
}

ir::Circuit MajsatPlan::full_circuit() const {
  ir::Circuit out(qubit_count, layout);
  out.append(preparation);
  for (std::size_t k = 0; k < config.r; ++k) out.append(amplification);
  out.append(readout);
  return out;
}

MajsatPlan plan(const cnf::CnfFormula& formula, const MajsatConfig& config) {
  formula.validate(false);
  MajsatPlan p;
  p.formula = formula;
  p.config = resolve(config, formula.num_vars);
  p.three_cnf = cnf::to_3cnf(formula);
  p.oracle = cnf::build_oracle(p.three_cnf, {.polarity_fix = p.config.polarity_fix});

  ir::RegisterLayout layout = p.oracle.layout;
  Qubit next = p.oracle.circuit.qubit_count();
  layout.non_hermitian = next++;
  layout.bhr = next++;

  // Semantic segments over the logical register first; primitive mode then
  // widens the register with ancillas and lowers each segment.
  auto build = [&](std::size_t width, const ir::RegisterLayout& lay) {
    const Qubit nh = *lay.non_hermitian;
    ir::Circuit prep(width, lay);
    if (p.config.orientation == Orientation::Boost) prep.append(Gate::x(nh));
    for (Qubit q : lay.work) prep.append(Gate::h(q));
    for (const Gate& gate : p.oracle.circuit.gates()) prep.append(gate);
    std::vector<Qubit> amplified = lay.work;
    amplified.insert(amplified.end(), lay.aux_var.begin(), lay.aux_var.end());
    amplified.insert(amplified.end(), lay.clause.begin(), lay.clause.end());
    for (Qubit q : amplified) prep.append(Gate::h(q));
    for (Qubit q : amplified) prep.append(Gate::x(q));

    ir::Circuit block(width, lay);
    for (Qubit q : amplified) block.append(Gate::cg(q, nh, p.config.g));

    ir::Circuit readout(width, lay);
    readout.append(Gate::h(*lay.oracle));
    readout.append(Gate::cnot(*lay.bhr, *lay.oracle));
    for (std::size_t k = 0; k < p.config.r_prime; ++k) {
      readout.append(Gate::cg(*lay.oracle, nh, p.config.g));
    }
    p.preparation = std::move(prep);
    p.amplification = std::move(block);
    p.readout = std::move(readout);
  };

  build(next, layout);
  if (p.config.lowering == Lowering::Primitive) {
    const std::size_t chain = std::max({ir::required_chain_ancillas(p.preparation),
                                        ir::required_chain_ancillas(p.amplification),
                                        ir::required_chain_ancillas(p.readout)});
    layout.const_one = {next, next + 1};
    next += 2;
    layout.helper_one = next++;
    for (std::size_t k = 0; k < chain; ++k) layout.chain_ancilla.push_back(next++);
    build(next, layout);
    p.preparation = lower_segment(p.preparation);
    p.amplification = lower_segment(p.amplification);
    p.readout = lower_segment(p.readout);
  }
  p.layout = layout;
  p.qubit_count = next;
  p.layout.validate(next, true);
  if (p.qubit_count > sim::max_qubits()) {
    throw Error(ErrorKind::Resource,
                "MAJSAT register needs " + std::to_string(p.qubit_count) +
                    " qubits, cap is " + std::to_string(sim::max_qubits()) +
                    " (raise RNQC_MAX_QUBITS or use semantic lowering)");
  }
  return p;
}

sim::StateVector amplified_state(const MajsatPlan& plan, std::size_t r) {
  sim::StateVector state = sim::StateVector::basis(plan.qubit_count, plan.layout.rest_basis_index());
  sim::apply_circuit(state, plan.preparation);
  for (std::size_t k = 0; k < r; ++k) sim::apply_circuit(state, plan.amplification);
  return state;
}

namespace {

void run_readout(const MajsatPlan& plan, sim::StateVector& state, int i) {
  sim::prepare_superposed_qubit(state, *plan.layout.bhr, 1.0, std::ldexp(1.0, i));
  sim::apply_circuit(state, plan.readout);
}

}  // namespace

sim::StateVector final_state(const MajsatPlan& plan, int i) {
  sim::StateVector state = amplified_state(plan, plan.config.r);
  run_readout(plan, state, i);
  return state;
}

std::vector<std::pair<std::uint64_t, sim::Complex>> predicted_amplified_state(
    const MajsatPlan& plan, std::uint64_t s) {
  std::uint64_t index = plan.layout.rest_basis_index();
  for (Qubit q : plan.amplified_qubits()) index |= bit(q);
  if (plan.config.orientation == Orientation::Boost) index |= bit(*plan.layout.non_hermitian);
  const double big_n = std::ldexp(1.0, static_cast<int>(plan.n()));
  const double sd = static_cast<double>(s);
  return {{index, big_n - sd}, {index | bit(*plan.layout.oracle), sd}};
}

std::pair<double, double> predicted_bhr_state(std::size_t n, std::uint64_t s, int i) {
  const double big_n = std::ldexp(1.0, static_cast<int>(n));
  return {big_n - 2.0 * static_cast<double>(s), std::ldexp(1.0, i) * big_n};
}

std::vector<double> amplification_profile(const MajsatPlan& plan, std::size_t r_max) {
  const std::uint64_t s = cnf::count_models(plan.formula);
  const auto ideal = predicted_amplified_state(plan, s);
  sim::StateVector state = amplified_state(plan, 0);
  std::vector<double> out;
  for (std::size_t r = 1; r <= r_max; ++r) {
    sim::apply_circuit(state, plan.amplification);
    out.push_back(sim::fidelity(state, ideal));
  }
  return out;
}

namespace {

struct Distribution {
  double p_keep;    // oracle reads 1
  double p_plus;    // BHR x outcome +1 given oracle 1
  double p_minus;
  std::optional<double> bhr_fidelity;
};

// Exact outcome statistics for every i in the sweep, computed in parallel.
std::vector<Distribution> distributions(const MajsatPlan& plan, const sim::StateVector& amplified,
                                        std::optional<std::uint64_t> s) {
  const ResolvedConfig& c = plan.config;
  const std::size_t count = static_cast<std::size_t>(c.i_max - c.i_min + 1);
  std::vector<Distribution> out(count);
  parallel_for(count, c.jobs, [&](std::size_t k) {
    const int i = c.i_min + static_cast<int>(k);
    sim::StateVector state = amplified;
    run_readout(plan, state, i);
    Distribution d{};
    d.p_keep = sim::probabilities_z(state, *plan.layout.oracle).second;
    sim::postselect(state, *plan.layout.oracle, 1);
    std::tie(d.p_plus, d.p_minus) = sim::probabilities_x(state, *plan.layout.bhr);
    if (s) d.bhr_fidelity = bhr_fidelity(state, *plan.layout.bhr, predicted_bhr_state(plan.n(), *s, i));
    out[k] = d;
  });
  return out;
}

MajsatReport start_report(const MajsatPlan& plan) {
  MajsatReport report;
  report.n = plan.n();
  report.qubit_count = plan.qubit_count;
  report.config = plan.config;
  return report;
}

// Shared work of both modes: amplified state, checkpoints and the exact
// per-i distributions.
std::vector<Distribution> evaluate(const MajsatPlan& plan, MajsatReport& report) {
  const sim::StateVector amplified = amplified_state(plan, plan.config.r);
  std::optional<std::uint64_t> s;
  if (plan.config.checkpoints && plan.n() <= cnf::kMaxCountVars) {
    s = cnf::count_models(plan.formula);
    report.checkpoints["amplified_state_fidelity"] =
        sim::fidelity(amplified, predicted_amplified_state(plan, *s));
  }
  std::vector<Distribution> dist = distributions(plan, amplified, s);
  double worst = 1.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    IEntry entry;
    entry.i = plan.config.i_min + static_cast<int>(k);
    entry.beta_over_alpha = std::ldexp(1.0, entry.i);
    entry.discarded_mass = 1.0 - dist[k].p_keep;
    entry.bhr_fidelity = dist[k].bhr_fidelity;
    if (dist[k].bhr_fidelity) worst = std::min(worst, *dist[k].bhr_fidelity);
    report.discarded_mass = std::max(report.discarded_mass, entry.discarded_mass);
    report.per_i.push_back(entry);
  }
  if (s) report.checkpoints["bhr_state_fidelity_min"] = worst;
  return dist;
}

}  // namespace

MajsatReport run_exact(const MajsatPlan& plan) {
  MajsatReport report = start_report(plan);
  const std::vector<Distribution> dist = evaluate(plan, report);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    IEntry& entry = report.per_i[k];
    entry.p_minus = dist[k].p_minus;
    entry.p_plus = dist[k].p_plus;
    entry.all_sets_success = dist[k].p_minus > dist[k].p_plus;
  }
  report.verdict = decide(report);
  return report;
}

MajsatReport run_sampled(const MajsatPlan& plan) {
  MajsatReport report = start_report(plan);
  const std::vector<Distribution> dist = evaluate(plan, report);
  const ResolvedConfig& c = plan.config;
  const CounterRng root(c.seed);
  std::uint64_t shots = 0;
  std::uint64_t discarded = 0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    IEntry& entry = report.per_i[k];
    const CounterRng per_i = root.split(k);
    entry.all_sets_success = true;
    for (std::size_t set = 0; set < c.sets; ++set) {
      CounterRng rng = per_i.split(set);
      SetResult result;
      for (std::size_t run = 0; run < c.runs_per_set; ++run) {
        // Oracle z measurement: outcome 0 when u < P(0).
        if (rng.uniform() < 1.0 - dist[k].p_keep) {
          ++result.discarded;
          continue;
        }
        // BHR x measurement: +1 when u < P(+1).
        if (rng.uniform() < dist[k].p_plus) {
          ++result.plus_count;
        } else {
          ++result.minus_count;
        }
      }
      result.success = result.minus_count > result.plus_count;
      if (result.minus_count == result.plus_count) report.low_confidence = true;
      entry.all_sets_success = entry.all_sets_success && result.success;
      shots += c.runs_per_set;
      discarded += result.discarded;
      entry.set_results.push_back(result);
    }
  }
  if (discarded == shots) {
    throw Error(ErrorKind::Numeric, "every shot measured the oracle as 0; r' is far too small");
  }
  report.discarded_fraction = static_cast<double>(discarded) / static_cast<double>(shots);
  report.verdict = decide(report);
  return report;
}

MajsatReport run(const MajsatPlan& plan) {
  return plan.config.mode == RunMode::Exact ? run_exact(plan) : run_sampled(plan);
}

bool decide(const MajsatReport& report) {
  if (report.per_i.empty()) config_fail("empty i range");
  for (const IEntry& entry : report.per_i) {
    if (entry.all_sets_success) return true;
  }
  return false;
}

nlohmann::json report_to_json(const MajsatReport& report) {
  nlohmann::json per_i = nlohmann::json::array();
  for (const IEntry& e : report.per_i) {
    nlohmann::json j = {{"i", e.i},
                        {"beta_over_alpha", e.beta_over_alpha},
                        {"discarded_mass", e.discarded_mass},
                        {"all_sets_success", e.all_sets_success}};
    if (e.p_minus) j["exact_p_minus"] = *e.p_minus;
    if (e.p_plus) j["exact_p_plus"] = *e.p_plus;
    if (e.bhr_fidelity) j["bhr_fidelity"] = *e.bhr_fidelity;
    if (!e.set_results.empty()) {
      nlohmann::json sets = nlohmann::json::array();
      for (const SetResult& s : e.set_results) {
        sets.push_back({{"minus_count", s.minus_count},
                        {"plus_count", s.plus_count},
                        {"discarded", s.discarded},
                        {"success", s.success}});
      }
      j["set_results"] = std::move(sets);
    }
    per_i.push_back(std::move(j));
  }
  nlohmann::json out = {{"n", report.n},
                        {"qubits", report.qubit_count},
                        {"config", config_to_json(report.config)},
                        {"per_i", std::move(per_i)},
                        {"verdict", report.verdict ? "YES" : "NO"},
                        {"discarded_mass", report.discarded_mass}};
  if (report.reference_s) out["reference_s"] = *report.reference_s;
  if (!report.checkpoints.empty()) out["checkpoints"] = report.checkpoints;
  if (report.discarded_fraction) {
    out["discarded_fraction"] = *report.discarded_fraction;
    out["low_confidence"] = report.low_confidence;
  }
  return out;
}

}  // namespace rnqc::majsat
