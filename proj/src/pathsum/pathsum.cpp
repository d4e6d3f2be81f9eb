#include "rnqc/pathsum/pathsum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rnqc/error.hpp"
#include "rnqc/parallel.hpp"
#include "rnqc/sim/state_vector.hpp"

namespace rnqc::pathsum {

using ir::Gate;
using ir::GateKind;

namespace {

__extension__ typedef unsigned __int128 Count;

std::uint64_t bit(ir::Qubit q) { return std::uint64_t{1} << q; }

struct Successor {
  std::uint64_t z;
  Complex amp;
};

// Nonzero entries of column `z` of the gate's matrix: at most two.
int successors(const Gate& gate, std::uint64_t z, Successor out[2]) {
  const std::uint64_t t = bit(gate.target());
  const bool b = (z & t) != 0;
  bool controls_on = true;
  for (ir::Qubit c : gate.controls()) controls_on = controls_on && (z & bit(c)) != 0;
  switch (gate.kind()) {
    case GateKind::H: {
      const double h = std::numbers::sqrt2 / 2.0;
      out[0] = {z & ~t, h};
      out[1] = {z | t, b ? -h : h};
      return 2;
    }
    case GateKind::X: out[0] = {z ^ t, 1.0}; return 1;
    case GateKind::Z: out[0] = {z, b ? -1.0 : 1.0}; return 1;
    case GateKind::T:
      out[0] = {z, b ? std::polar(1.0, -std::numbers::pi / 4.0) : Complex(1.0)};
      return 1;
    case GateKind::CNOT:
    case GateKind::CCNOT:
    case GateKind::NCNOT: out[0] = {controls_on ? z ^ t : z, 1.0}; return 1;
    case GateKind::G:
    case GateKind::CG: {
      double f = 1.0;
      if (controls_on) f = b ? gate.param() : 1.0 / gate.param();
      out[0] = {z, f};
      return 1;
    }
  }
  return 0;
}

struct ForwardPath {
  std::vector<std::uint64_t> states;  // after each gate; empty unless recorded
  Complex amp;
};

// Forward paths grouped by their final basis state.
std::map<std::uint64_t, std::vector<ForwardPath>> forward_paths(const ir::Circuit& circuit,
                                                                 std::uint64_t input,
                                                                 std::uint64_t budget,
                                                                 bool record) {
  if (input >= (std::uint64_t{1} << circuit.qubit_count())) {
    throw Error(ErrorKind::Config, "input basis index out of range");
  }
  std::size_t branching = 0;
  for (const Gate& g : circuit.gates()) branching += g.kind() == GateKind::H ? 1 : 0;
  if (branching >= 63 || (std::uint64_t{1} << branching) > budget) {
    throw Error(ErrorKind::Resource, "path enumeration: 2^" + std::to_string(branching) +
                                         " forward paths exceed the budget of " +
                                         std::to_string(budget));
  }
  std::vector<ForwardPath> current{{{}, Complex(1.0)}};
  std::vector<std::uint64_t> ends{input};
  for (const Gate& gate : circuit.gates()) {
    std::vector<ForwardPath> next_paths;
    std::vector<std::uint64_t> next_ends;
    for (std::size_t p = 0; p < current.size(); ++p) {
      Successor succ[2];
      const int count = successors(gate, ends[p], succ);
      for (int k = 0; k < count; ++k) {
        if (succ[k].amp == Complex(0.0)) continue;
        ForwardPath path{record ? current[p].states : std::vector<std::uint64_t>{},
                         current[p].amp * succ[k].amp};
        if (record) path.states.push_back(succ[k].z);
        next_paths.push_back(std::move(path));
        next_ends.push_back(succ[k].z);
      }
    }
    current = std::move(next_paths);
    ends = std::move(next_ends);
  }
  std::map<std::uint64_t, std::vector<ForwardPath>> out;
  for (std::size_t p = 0; p < current.size(); ++p) out[ends[p]].push_back(std::move(current[p]));
  return out;
}

bool projector_keeps(const Projector& projector, std::uint64_t z) {
  return projector.kind == ProjectorKind::Yn || (z & bit(projector.yes_qubit)) != 0;
}

void check_projector(const ir::Circuit& circuit, const Projector& projector) {
  if (projector.yes_qubit >= circuit.qubit_count()) {
    throw Error(ErrorKind::Config, "yes qubit " + std::to_string(projector.yes_qubit) +
                                       " out of range");
  }
}

std::uint64_t term_count(const std::map<std::uint64_t, std::vector<ForwardPath>>& groups,
                         const Projector& projector, std::uint64_t budget) {
  std::uint64_t terms = 0;
  for (const auto& [z, paths] : groups) {
    if (!projector_keeps(projector, z)) continue;
    terms += static_cast<std::uint64_t>(paths.size()) * paths.size();
  }
  if (terms > budget) {
    throw Error(ErrorKind::Resource, "path sum has " + std::to_string(terms) +
                                         " terms, budget is " + std::to_string(budget));
  }
  return terms;
}

// Per-z partial results, reduced in z order afterwards.
struct Partial {
  Complex yes{0.0};
  Complex no{0.0};
  double abs_sum = 0.0;
  Count plus_yes = 0, minus_yes = 0, plus_all = 0, minus_all = 0;
};

template <class F>
std::vector<Partial> over_groups(const std::map<std::uint64_t, std::vector<ForwardPath>>& groups,
                                 std::size_t jobs, F&& per_group) {
  std::vector<const std::pair<const std::uint64_t, std::vector<ForwardPath>>*> items;
  for (const auto& item : groups) items.push_back(&item);
  std::vector<Partial> partials(items.size());
  parallel_for(items.size(), jobs, [&](std::size_t k) {
    partials[k] = per_group(items[k]->first, items[k]->second);
  });
  return partials;
}

void check_imaginary(double im, double abs_sum) {
  if (std::abs(im) > 1e-9 * std::max(1.0, abs_sum)) {
    throw Error(ErrorKind::Numeric, "path sum imaginary parts do not cancel (" +
                                        std::to_string(im) + ")");
  }
}

void fill_split(PathSumResult& r, const Projector& projector, double yes, double no) {
  r.c_yes_sq = yes;
  if (projector.kind == ProjectorKind::Yes) {
    r.value = yes;
    return;
  }
  r.value = yes + no;
  r.c_no_sq = no;
  if (r.value > 0.0) r.acceptance = yes / r.value;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Direct: return "direct";
    case Method::PathSum: return "pathsum";
    case Method::Counting: return "counting";
  }
  return "direct";
}

std::optional<Method> method_from_string(std::string_view name) {
  if (name == "direct") return Method::Direct;
  if (name == "pathsum") return Method::PathSum;
  if (name == "counting") return Method::Counting;
  return std::nullopt;
}

PathSumResult direct_amplitude(const ir::Circuit& circuit, std::uint64_t input_basis,
                               const Projector& projector) {
  check_projector(circuit, projector);
  const bool has_t = std::any_of(circuit.gates().begin(), circuit.gates().end(),
                                 [](const Gate& g) { return g.kind() == GateKind::T; });
  sim::StateVector state = sim::StateVector::basis(
      circuit.qubit_count(), input_basis, has_t ? sim::Mode::Complex : sim::Mode::Real);
  sim::apply_circuit(state, circuit);
  const double scale = std::ldexp(1.0, 2 * state.scale_exponent());
  const double yes = state.mantissa_mass(projector.yes_qubit, 1) * scale;
  const double no = state.mantissa_mass(projector.yes_qubit, 0) * scale;
  if (!std::isfinite(yes) || !std::isfinite(no)) {
    throw Error(ErrorKind::Numeric, "squared norm overflows a double");
  }
  PathSumResult r;
  r.method = Method::Direct;
  r.kind = projector.kind;
  fill_split(r, projector, yes, no);
  return r;
}

PathSumResult path_sum_amplitude(const ir::Circuit& circuit, std::uint64_t input_basis,
                                 const Projector& projector, std::uint64_t budget,
                                 std::size_t jobs) {
  check_projector(circuit, projector);
  const auto groups = forward_paths(circuit, input_basis, budget, false);
  PathSumResult r;
  r.method = Method::PathSum;
  r.kind = projector.kind;
  r.path_count = term_count(groups, projector, budget);

  const auto partials = over_groups(groups, jobs, [&](std::uint64_t z, const auto& paths) {
    Partial part;
    if (!projector_keeps(projector, z)) return part;
    Complex sum{0.0};
    for (const ForwardPath& q : paths) {
      for (const ForwardPath& p : paths) {
        const Complex term = std::conj(q.amp) * p.amp;
        sum += term;
        part.abs_sum += std::abs(term);
      }
    }
    ((z & bit(projector.yes_qubit)) != 0 ? part.yes : part.no) = sum;
    return part;
  });
  Complex yes{0.0}, no{0.0};
  double abs_sum = 0.0;
  for (const Partial& part : partials) {
    yes += part.yes;
    no += part.no;
    abs_sum += part.abs_sum;
  }
  check_imaginary(yes.imag() + no.imag(), abs_sum);
  fill_split(r, projector, yes.real(), no.real());
  return r;
}

std::vector<PathTerm> enumerate_terms(const ir::Circuit& circuit, std::uint64_t input_basis,
                                      const Projector& projector, std::uint64_t budget) {
  check_projector(circuit, projector);
  const auto groups = forward_paths(circuit, input_basis, budget, true);
  term_count(groups, projector, budget);
  std::vector<PathTerm> out;
  for (const auto& [z, paths] : groups) {
    if (!projector_keeps(projector, z)) continue;
    for (const ForwardPath& q : paths) {
      for (const ForwardPath& p : paths) {
        PathTerm term;
        term.path = p.states;
        term.path.insert(term.path.end(), q.states.rbegin(), q.states.rend());
        term.value = std::conj(q.amp) * p.amp;
        out.push_back(std::move(term));
      }
    }
  }
  return out;
}

bool dtm_predicate(Complex value, double k, Polarity polarity) {
  const double re = value.real();
  return polarity == Polarity::Plus ? (re > 0.0 && k < re) : (re < 0.0 && k > re);
}

std::uint64_t accepting_grid_points(Complex value, int n_times_c, Polarity polarity) {
  if (n_times_c < 1 || n_times_c > 60) {
    throw Error(ErrorKind::Numeric, "counting grid 2^-" + std::to_string(n_times_c) +
                                        " is outside the supported range [2^-60, 2^-1]");
  }
  const double re = polarity == Polarity::Plus ? value.real() : -value.real();
  if (!(re > 0.0)) return 0;
  // Grid points j * 2^-nc with j = 0 .. 4^nc; those below |Re| number
  // ceil(|Re| * 2^nc), capped at the grid size.
  const double scaled = std::ceil(std::ldexp(re, n_times_c));
  const double points = std::ldexp(1.0, 2 * n_times_c) + 1.0;
  const double count = std::min(scaled, points);
  if (count >= 0x1p63) {
    throw Error(ErrorKind::Numeric, "accepting grid points overflow a 64-bit count");
  }
  return static_cast<std::uint64_t>(count);
}

int adaptive_precision(std::uint64_t path_count, std::size_t n, double target) {
  if (n == 0) throw Error(ErrorKind::Config, "counting needs at least one qubit");
  for (int c = 1; static_cast<std::size_t>(c) * n <= 60; ++c) {
    const double bound = static_cast<double>(path_count) * std::ldexp(1.0, -c * static_cast<int>(n));
    if (bound < target) return c;
  }
  throw Error(ErrorKind::Numeric, "no precision with n*c <= 60 reaches the requested bound");
}

PathSumResult counting_estimate(const ir::Circuit& circuit, std::uint64_t input_basis,
                                const Projector& projector, std::optional<int> precision_c,
                                std::uint64_t budget, std::size_t jobs) {
  check_projector(circuit, projector);
  const auto groups = forward_paths(circuit, input_basis, budget, false);
  PathSumResult r;
  r.method = Method::Counting;
  r.kind = projector.kind;
  r.path_count = term_count(groups, projector, budget);
  const std::size_t n = circuit.qubit_count();
  const int c = precision_c ? *precision_c : adaptive_precision(std::max<std::uint64_t>(1, r.path_count), n);
  if (c < 1) throw Error(ErrorKind::Config, "precision c must be at least 1");
  const int nc = c * static_cast<int>(n);
  if (nc > 60) throw Error(ErrorKind::Numeric, "counting grid underflow: n*c exceeds 60");

  const auto partials = over_groups(groups, jobs, [&](std::uint64_t z, const auto& paths) {
    Partial part;
    if (!projector_keeps(projector, z)) return part;
    const bool yes = (z & bit(projector.yes_qubit)) != 0;
    for (const ForwardPath& q : paths) {
      for (const ForwardPath& p : paths) {
        const Complex term = std::conj(q.amp) * p.amp;
        const Count plus = accepting_grid_points(term, nc, Polarity::Plus);
        const Count minus = accepting_grid_points(term, nc, Polarity::Minus);
        part.plus_all += plus;
        part.minus_all += minus;
        if (yes) {
          part.plus_yes += plus;
          part.minus_yes += minus;
        }
      }
    }
    return part;
  });
  Count plus_yes = 0, minus_yes = 0, plus_all = 0, minus_all = 0;
  for (const Partial& part : partials) {
    plus_yes += part.plus_yes;
    minus_yes += part.minus_yes;
    plus_all += part.plus_all;
    minus_all += part.minus_all;
  }
  auto to_value = [nc](Count plus, Count minus) {
    const long double diff = static_cast<long double>(plus) - static_cast<long double>(minus);
    return static_cast<double>(std::ldexp(diff, -nc));
  };
  const double yes = to_value(plus_yes, minus_yes);
  const double all = to_value(plus_all, minus_all);
  fill_split(r, projector, yes, all - yes);
  r.precision_c = c;
  r.grid_spacing = std::ldexp(1.0, -nc);
  r.error_bound = static_cast<double>(r.path_count) * *r.grid_spacing;
  return r;
}

nlohmann::json result_to_json(const PathSumResult& r) {
  nlohmann::json j = {{"method", to_string(r.method)},
                      {"projector", r.kind == ProjectorKind::Yes ? "yes" : "yn"},
                      {"value", r.value},
                      {"c_yes_sq", r.c_yes_sq},
                      {"path_count", r.path_count}};
  if (r.c_no_sq) j["c_no_sq"] = *r.c_no_sq;
  if (r.acceptance) j["acceptance"] = *r.acceptance;
  if (r.precision_c) j["precision_c"] = *r.precision_c;
  if (r.grid_spacing) j["grid_spacing"] = *r.grid_spacing;
  if (r.error_bound) j["error_bound"] = *r.error_bound;
  return j;
}

}  // namespace rnqc::pathsum
