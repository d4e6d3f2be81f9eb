#include "rnqc/cli/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "rnqc/cnf/formula.hpp"
#include "rnqc/cnf/oracle.hpp"
#include "rnqc/ir/json_io.hpp"
#include "rnqc/ir/lowering.hpp"
#include "rnqc/majsat/majsat.hpp"
#include "rnqc/pathsum/pathsum.hpp"
#include "rnqc/sim/state_vector.hpp"

namespace rnqc::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Config:
    case ErrorKind::Unsupported: return kExitInput;
    case ErrorKind::Resource: return kExitResource;
    case ErrorKind::Numeric:
    case ErrorKind::Invariant: return kExitInternal;
  }
  return kExitInternal;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Invariant, "SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int k = 0; k < length; ++k) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  }
  return hex.str();
}

std::string manifest_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    char* end = nullptr;
    const long long value = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') t = static_cast<std::time_t>(value);
  }
  std::tm utc{};
  gmtime_r(&t, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

nlohmann::json make_manifest(const std::string& command, std::string_view input_bytes,
                             const nlohmann::json& config, std::optional<std::uint64_t> seed) {
  nlohmann::json m = {{"command", command},
                      {"input_sha256", sha256_hex(input_bytes)},
                      {"config", config},
                      {"version", kVersion},
                      {"timestamp", manifest_timestamp()}};
  m["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return m;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path);
  out << doc.dump(2) << '\n';
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Options shared by the formula commands.
struct FormulaArgs {
  std::string path;
  bool keep_tautologies = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("file", path, "DIMACS CNF file")->required();
    cmd.add_flag("--keep-tautologies", keep_tautologies,
                 "drop clauses containing v and -v instead of rejecting them");
  }
  cnf::CnfFormula load(std::string& bytes) const {
    bytes = read_file(path);
    return cnf::parse_dimacs(bytes, {.keep_tautologies = keep_tautologies});
  }
};

nlohmann::json formula_json(const std::string& path, const cnf::CnfFormula& f) {
  return {{"source", path}, {"num_vars", f.num_vars}, {"num_clauses", f.clauses.size()}};
}

struct SolveArgs {
  FormulaArgs formula;
  double g = 2.0;
  std::size_t r = 0, rp = 0, sets = 0, runs = 0, runs_factor = 8, jobs = 1;
  double r_scale = 1.0;
  int i_min = 0, i_max = 0;
  std::uint64_t seed = 0;
  std::string mode = "exact", lowering = "semantic", orientation = "boost";
  std::string json_path;
  bool check = false;
  bool no_polarity_fix = false;
  CLI::Option *r_opt, *rp_opt, *sets_opt, *runs_opt, *imin_opt, *imax_opt, *seed_opt;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  std::string bytes;
  const cnf::CnfFormula formula = a.formula.load(bytes);
  majsat::MajsatConfig c;
  c.g = a.g;
  if (a.r_opt->count()) c.r = a.r;
  if (a.rp_opt->count()) c.r_prime = a.rp;
  c.r_scale = a.r_scale;
  if (a.imin_opt->count()) c.i_min = a.i_min;
  if (a.imax_opt->count()) c.i_max = a.i_max;
  if (a.sets_opt->count()) c.sets = a.sets;
  if (a.runs_opt->count()) c.runs_per_set = a.runs;
  c.runs_factor = a.runs_factor;
  c.seed = a.seed_opt->count() ? a.seed : entropy_seed();
  c.mode = a.mode == "exact" ? majsat::RunMode::Exact : majsat::RunMode::Sampled;
  c.lowering = a.lowering == "semantic" ? majsat::Lowering::Semantic : majsat::Lowering::Primitive;
  c.orientation =
      a.orientation == "boost" ? majsat::Orientation::Boost : majsat::Orientation::Literal;
  c.polarity_fix = !a.no_polarity_fix;
  c.jobs = a.jobs;

  const majsat::MajsatPlan plan = majsat::plan(formula, c);
  majsat::MajsatReport report = majsat::run(plan);
  if (!a.seed_opt->count()) out << "seed: " << c.seed << '\n';
  out << "verdict: " << (report.verdict ? "YES" : "NO") << '\n';

  nlohmann::json doc = majsat::report_to_json(report);
  if (a.check) {
    const std::uint64_t s = cnf::count_models(formula);
    report.reference_s = s;
    const bool truth = 2 * s > (std::uint64_t{1} << formula.num_vars);
    const bool agree = truth == report.verdict;
    doc["reference_s"] = s;
    doc["agree"] = agree;
    out << "reference_s: " << s << " (" << (agree ? "agree" : "disagree") << ")\n";
  }
  nlohmann::json config = majsat::config_to_json(plan.config);
  config["keep_tautologies"] = a.formula.keep_tautologies;
  config["check"] = a.check;
  doc["formula"] = formula_json(a.formula.path, formula);
  doc["manifest"] = make_manifest("solve", bytes, config, plan.config.seed);
  if (!a.json_path.empty()) write_json(a.json_path, doc);
  return report.verdict ? kExitYes : kExitNo;
}

int cmd_count(const FormulaArgs& a, const std::string& json_path, std::ostream& out) {
  std::string bytes;
  const cnf::CnfFormula formula = a.load(bytes);
  const std::uint64_t s = cnf::count_models(formula);
  out << s << '\n';
  if (!json_path.empty()) {
    nlohmann::json doc = {{"formula", formula_json(a.path, formula)}, {"n", formula.num_vars},
                          {"s", s}};
    doc["manifest"] = make_manifest("count", bytes, {{"keep_tautologies", a.keep_tautologies}},
                                    std::nullopt);
    write_json(json_path, doc);
  }
  return kExitYes;
}

int cmd_oracle_check(const FormulaArgs& a, const std::string& lowering, bool no_fix,
                     const std::string& json_path, std::ostream& out) {
  std::string bytes;
  const cnf::CnfFormula formula = a.load(bytes);
  const cnf::ThreeCnf three = cnf::to_3cnf(formula);
  const cnf::OracleArtifact oracle = cnf::build_oracle(three, {.polarity_fix = !no_fix});
  const auto mode = lowering == "primitive" ? cnf::OracleMode::Primitive : cnf::OracleMode::Semantic;
  const cnf::OracleReport report = cnf::verify_oracle(oracle, formula, mode);

  out << "inputs checked: " << report.inputs_checked << '\n';
  out << "mismatches: " << report.mismatches.size() << '\n';
  for (const auto& m : report.mismatches) {
    out << "  x=" << m.assignment << " expected " << m.expected << " observed " << m.observed
        << '\n';
  }
  out << "ancilla violations: " << report.ancilla_violations.size() << '\n';
  out << "clause violations: " << report.clause_violations.size() << '\n';
  out << (report.passed() ? "PASS" : "FAIL") << '\n';

  if (!json_path.empty()) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& m : report.mismatches) {
      mismatches.push_back({{"assignment", m.assignment}, {"expected", m.expected},
                            {"observed", m.observed}});
    }
    nlohmann::json doc = {{"formula", formula_json(a.path, formula)},
                          {"n", formula.num_vars},
                          {"qubits", oracle.circuit.qubit_count()},
                          {"clause_count", oracle.clause_count},
                          {"inputs_checked", report.inputs_checked},
                          {"mismatches", mismatches},
                          {"ancilla_violations", report.ancilla_violations},
                          {"clause_violations", report.clause_violations},
                          {"passed", report.passed()}};
    doc["manifest"] = make_manifest(
        "oracle-check", bytes,
        {{"lowering", lowering}, {"polarity_fix", !no_fix}, {"keep_tautologies", a.keep_tautologies}},
        std::nullopt);
    write_json(json_path, doc);
  }
  return report.passed() ? kExitYes : kExitNo;
}

ir::Circuit lower_pass(const ir::Circuit& c, const std::string& to) {
  if (to == "primitive") return ir::lower_to_primitive(c);
  if (to == "x") return ir::lower_x(c);
  if (to == "z") return ir::lower_z(c);
  if (to == "cnot") return ir::lower_cnot(c);
  if (to == "ncnot") return ir::lower_ncnot(c);
  return ir::lower_cg(c);
}

int cmd_lower(const std::string& path, const std::string& to, const std::string& output,
              const std::string& json_path, std::ostream& out, std::ostream& err) {
  const std::string bytes = read_file(path);
  const ir::Circuit lowered = lower_pass(ir::read_circuit(bytes), to);
  const std::string text = ir::write_circuit(lowered);
  if (output.empty()) {
    out << text << '\n';
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw Error(ErrorKind::Config, "cannot write " + output);
    f << text << '\n';
  }
  const ir::GateCensus census = ir::gate_census(lowered);
  err << "census: " << ir::census_to_json(census).dump() << '\n';
  if (!json_path.empty()) {
    nlohmann::json doc = {{"qubits", lowered.qubit_count()},
                          {"census", ir::census_to_json(census)},
                          {"circuit", ir::circuit_to_json(lowered)}};
    doc["manifest"] = make_manifest("lower", bytes, {{"to", to}}, std::nullopt);
    write_json(json_path, doc);
  }
  return kExitYes;
}

std::uint64_t parse_input(const std::string& bits, std::size_t qubits) {
  if (bits.empty()) return 0;
  if (bits.size() != qubits) {
    throw Error(ErrorKind::Config, "input bitstring has " + std::to_string(bits.size()) +
                                       " characters, circuit has " + std::to_string(qubits) +
                                       " qubits");
  }
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] != '0' && bits[q] != '1') {
      throw Error(ErrorKind::Config, "input bitstring may only contain 0 and 1");
    }
    if (bits[q] == '1') index |= std::uint64_t{1} << q;
  }
  return index;
}

std::string format_complex(const sim::Complex& z) {
  std::ostringstream s;
  s << std::setprecision(12) << z.real();
  if (z.imag() != 0.0) s << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

int cmd_simulate(const std::string& path, const std::string& input, bool amplitudes,
                 const std::string& json_path, std::ostream& out) {
  const std::string bytes = read_file(path);
  const ir::Circuit circuit = ir::read_circuit(bytes);
  const std::uint64_t index = parse_input(input, circuit.qubit_count());
  const bool has_t = std::any_of(circuit.gates().begin(), circuit.gates().end(),
                                 [](const ir::Gate& g) { return g.kind() == ir::GateKind::T; });
  sim::StateVector state = sim::StateVector::basis(circuit.qubit_count(), index,
                                                   has_t ? sim::Mode::Complex : sim::Mode::Real);
  sim::apply_circuit(state, circuit);
  const double norm = sim::norm_sq(state);

  out << std::setprecision(12);
  out << "norm_sq: " << norm << '\n';
  nlohmann::json probs = nlohmann::json::array();
  for (ir::Qubit q = 0; q < circuit.qubit_count(); ++q) {
    const double p1 = sim::probabilities_z(state, q).second;
    out << "qubit " << q << ": p1 = " << p1 << '\n';
    probs.push_back(p1);
  }
  nlohmann::json amps;
  if (amplitudes) {
    if (circuit.qubit_count() > 12) {
      throw Error(ErrorKind::Resource, "--amplitudes is limited to 12 qubits");
    }
    amps = nlohmann::json::array();
    for (std::uint64_t k = 0; k < state.dimension(); ++k) {
      const sim::Complex a = state.amplitude(k);
      out << "amp[" << k << "] = " << format_complex(a) << '\n';
      amps.push_back({a.real(), a.imag()});
    }
  }
  if (!json_path.empty()) {
    nlohmann::json doc = {{"qubits", circuit.qubit_count()},
                          {"input", index},
                          {"mode", state.is_real() ? "real" : "complex"},
                          {"norm_sq", norm},
                          {"p1", probs}};
    if (amplitudes) doc["amplitudes"] = amps;
    doc["manifest"] = make_manifest("simulate", bytes,
                                    {{"input", input}, {"amplitudes", amplitudes}}, std::nullopt);
    write_json(json_path, doc);
  }
  return kExitYes;
}

struct PathsumArgs {
  std::string path, input, methods = "direct,pathsum,counting", projector = "yn", json_path;
  std::size_t yes_qubit = 0, jobs = 1;
  int precision_c = 0;
  std::uint64_t budget = pathsum::kDefaultPathBudget;
  CLI::Option* precision_opt;
};

int cmd_pathsum(const PathsumArgs& a, std::ostream& out) {
  const std::string bytes = read_file(a.path);
  const ir::Circuit circuit = ir::read_circuit(bytes);
  const std::uint64_t index = parse_input(a.input, circuit.qubit_count());
  const pathsum::Projector projector{
      a.projector == "yes" ? pathsum::ProjectorKind::Yes : pathsum::ProjectorKind::Yn,
      a.yes_qubit};

  std::vector<pathsum::Method> methods;
  std::stringstream list(a.methods);
  for (std::string item; std::getline(list, item, ',');) {
    const auto m = pathsum::method_from_string(item);
    if (!m) throw Error(ErrorKind::Config, "unknown method '" + item + "'");
    methods.push_back(*m);
  }
  if (methods.empty()) throw Error(ErrorKind::Config, "--methods is empty");

  std::vector<pathsum::PathSumResult> results;
  for (pathsum::Method m : methods) {
    switch (m) {
      case pathsum::Method::Direct:
        results.push_back(pathsum::direct_amplitude(circuit, index, projector));
        break;
      case pathsum::Method::PathSum:
        results.push_back(pathsum::path_sum_amplitude(circuit, index, projector, a.budget, a.jobs));
        break;
      case pathsum::Method::Counting: {
        std::optional<int> c;
        if (a.precision_opt->count()) c = a.precision_c;
        results.push_back(
            pathsum::counting_estimate(circuit, index, projector, c, a.budget, a.jobs));
        break;
      }
    }
  }

  out << std::left << std::setw(10) << "method" << std::setw(20) << "c_yes_sq" << std::setw(20)
      << "c_no_sq" << std::setw(20) << "acceptance" << std::setw(12) << "paths"
      << "error_bound\n";
  auto cell = [](std::optional<double> v) {
    std::ostringstream s;
    if (v) {
      s << std::setprecision(12) << *v;
    } else {
      s << "-";
    }
    return s.str();
  };
  for (const auto& r : results) {
    out << std::left << std::setw(10) << pathsum::to_string(r.method) << std::setw(20)
        << cell(r.c_yes_sq) << std::setw(20) << cell(r.c_no_sq) << std::setw(20)
        << cell(r.acceptance) << std::setw(12) << r.path_count << cell(r.error_bound) << '\n';
  }

  // Agreement against the first method listed.
  bool agree = true;
  for (std::size_t k = 1; k < results.size(); ++k) {
    const double tol = results[k].error_bound.value_or(0.0) +
                       1e-9 * std::max(1.0, std::abs(results[0].value));
    const double tol0 = results[0].error_bound.value_or(0.0);
    agree = agree && std::abs(results[k].value - results[0].value) <= tol + tol0;
  }
  out << (agree ? "agree" : "DISAGREE") << '\n';

  if (!a.json_path.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(pathsum::result_to_json(r));
    nlohmann::json doc = {{"qubits", circuit.qubit_count()},
                          {"input", index},
                          {"projector", a.projector},
                          {"yes_qubit", a.yes_qubit},
                          {"results", arr},
                          {"agree", agree}};
    nlohmann::json config = {{"methods", a.methods},
                             {"projector", a.projector},
                             {"yes_qubit", a.yes_qubit},
                             {"input", a.input},
                             {"budget", a.budget}};
    if (a.precision_opt->count()) config["precision_c"] = a.precision_c;
    doc["manifest"] = make_manifest("pathsum", bytes, config, std::nullopt);
    write_json(a.json_path, doc);
  }
  return agree ? kExitYes : kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real non-Hermitian quantum circuit simulator and MAJSAT solver", "rnqc"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "decide MAJSAT for a DIMACS formula");
  SolveArgs sa;
  sa.formula.add_to(*solve);
  solve->add_option("--g", sa.g, "non-Hermitian gate parameter (> 1)");
  sa.r_opt = solve->add_option("--r", sa.r, "amplification blocks (default ceil(n ln2 / ln g))");
  sa.rp_opt = solve->add_option("--rp", sa.rp, "readout controlled-G gates");
  solve->add_option("--r-scale", sa.r_scale, "factor applied to the default r and r'");
  sa.imin_opt = solve->add_option("--i-min", sa.i_min, "smallest log2(beta/alpha) (default -n)");
  sa.imax_opt = solve->add_option("--i-max", sa.i_max, "largest log2(beta/alpha) (default n)");
  sa.sets_opt = solve->add_option("--sets", sa.sets, "measurement sets per i (default n)");
  sa.runs_opt = solve->add_option("--runs", sa.runs, "runs per set (default runs-factor * n)");
  solve->add_option("--runs-factor", sa.runs_factor, "runs per set per variable");
  sa.seed_opt = solve->add_option("--seed", sa.seed, "64-bit seed (default: from entropy, printed)");
  solve->add_option("--mode", sa.mode)->check(CLI::IsMember({"exact", "sampled"}));
  solve->add_option("--lowering", sa.lowering)->check(CLI::IsMember({"semantic", "primitive"}));
  solve->add_option("--g-orientation", sa.orientation)->check(CLI::IsMember({"boost", "literal"}));
  solve->add_flag("--no-polarity-fix", sa.no_polarity_fix, "leave clause qubits marking unsatisfied clauses");
  solve->add_option("--json", sa.json_path, "write the report here");
  solve->add_option("--jobs", sa.jobs, "worker threads");
  solve->add_flag("--check", sa.check, "also count models by brute force");

  auto* count = app.add_subcommand("count", "count satisfying assignments by enumeration");
  FormulaArgs ca;
  std::string count_json;
  ca.add_to(*count);
  count->add_option("--json", count_json);

  auto* oracle = app.add_subcommand("oracle-check", "verify the oracle circuit on every input");
  FormulaArgs oa;
  std::string oracle_lowering = "semantic", oracle_json;
  bool oracle_no_fix = false;
  oa.add_to(*oracle);
  oracle->add_option("--lowering", oracle_lowering)->check(CLI::IsMember({"semantic", "primitive"}));
  oracle->add_flag("--no-polarity-fix", oracle_no_fix);
  oracle->add_option("--json", oracle_json);

  auto* lower = app.add_subcommand("lower", "rewrite a circuit JSON file");
  std::string lower_path, lower_to = "primitive", lower_out, lower_json;
  lower->add_option("file", lower_path)->required();
  lower->add_option("--to", lower_to)
      ->check(CLI::IsMember({"primitive", "x", "z", "cnot", "ncnot", "cg"}));
  lower->add_option("-o,--output", lower_out, "write the circuit here instead of stdout");
  lower->add_option("--json", lower_json, "write census and circuit report here");

  auto* simulate = app.add_subcommand("simulate", "run a circuit JSON file on a basis input");
  std::string sim_path, sim_input, sim_json;
  bool sim_amplitudes = false;
  simulate->add_option("file", sim_path)->required();
  simulate->add_option("--input", sim_input, "bitstring, qubit 0 first (default all zeros)");
  simulate->add_flag("--amplitudes", sim_amplitudes, "print every amplitude (<= 12 qubits)");
  simulate->add_option("--json", sim_json);

  auto* psum = app.add_subcommand("pathsum", "compare direct, path-sum and counting evaluation");
  PathsumArgs pa;
  psum->add_option("file", pa.path)->required();
  psum->add_option("--input", pa.input, "bitstring, qubit 0 first (default all zeros)");
  psum->add_option("--yes-qubit", pa.yes_qubit);
  psum->add_option("--projector", pa.projector)->check(CLI::IsMember({"yes", "yn"}));
  psum->add_option("--methods", pa.methods, "comma-separated: direct,pathsum,counting");
  pa.precision_opt = psum->add_option("--precision-c", pa.precision_c, "counting precision c");
  psum->add_option("--budget", pa.budget, "maximum number of path-sum terms");
  psum->add_option("--jobs", pa.jobs);
  psum->add_option("--json", pa.json_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitYes : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(sa, out);
    if (*count) return cmd_count(ca, count_json, out);
    if (*oracle) return cmd_oracle_check(oa, oracle_lowering, oracle_no_fix, oracle_json, out);
    if (*lower) return cmd_lower(lower_path, lower_to, lower_out, lower_json, out, err);
    if (*simulate) return cmd_simulate(sim_path, sim_input, sim_amplitudes, sim_json, out);
    if (*psum) return cmd_pathsum(pa, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error (parse): " << e.what() << '\n';
    return kExitInput;
  } catch (const std::bad_alloc&) {
    err << "error (resource): out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace rnqc::cli
