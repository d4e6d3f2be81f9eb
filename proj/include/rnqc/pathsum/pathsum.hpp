#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rnqc/ir/circuit.hpp"

namespace rnqc::pathsum {

using Complex = std::complex<double>;

enum class ProjectorKind {
  Yes,  ///< |1><1| on the yes qubit
  Yn,   ///< |0><0| + |1><1| on the yes qubit, i.e. the identity
};

struct Projector {
  ProjectorKind kind = ProjectorKind::Yes;
  ir::Qubit yes_qubit = 0;
};

enum class Method { Direct, PathSum, Counting };

std::string to_string(Method method);
std::optional<Method> method_from_string(std::string_view name);

/// One contributing term of the doubled path sum: the basis states after
/// each forward gate followed by those of the mirrored backward pass, and the
/// product of the matrix elements along the way.
struct PathTerm {
  std::vector<std::uint64_t> path;
  Complex value;
};

/// <i| N_1^+ ... N_t^+ P N_t ... N_1 |i> evaluated by one method.
///
/// `value` is the projected quantity itself: c_yes_sq for a yes projector,
/// the full squared norm for a yn projector. A yn query also reports the
/// yes/no split and the acceptance probability c_yes_sq / (c_yes_sq + c_no_sq).
struct PathSumResult {
  Method method = Method::Direct;
  ProjectorKind kind = ProjectorKind::Yes;
  double value = 0.0;
  double c_yes_sq = 0.0;
  std::optional<double> c_no_sq;
  std::optional<double> acceptance;
  /// Nonzero terms summed (direct: 0).
  std::uint64_t path_count = 0;
  std::optional<int> precision_c;
  /// Spacing of the counting grid, 2^(-n c).
  std::optional<double> grid_spacing;
  /// Worst-case |estimate - exact| for `value`: path_count * grid_spacing.
  std::optional<double> error_bound;
};

constexpr std::uint64_t kDefaultPathBudget = 100'000'000;

/// Forward simulation. Complex mode is used only when the circuit has T.
PathSumResult direct_amplitude(const ir::Circuit& circuit, std::uint64_t input_basis,
                               const Projector& projector);

/// Sums every nonzero term. Branching happens only where a gate's matrix has
/// more than one nonzero entry in a column (H); diagonal and permutation
/// gates contribute a single successor. Throws Resource when the number of
/// terms would exceed `budget`, Numeric when the imaginary parts fail to
/// cancel.
PathSumResult path_sum_amplitude(const ir::Circuit& circuit, std::uint64_t input_basis,
                                 const Projector& projector,
                                 std::uint64_t budget = kDefaultPathBudget, std::size_t jobs = 1);

/// Materializes the terms (small circuits only; used by tests).
std::vector<PathTerm> enumerate_terms(const ir::Circuit& circuit, std::uint64_t input_basis,
                                      const Projector& projector,
                                      std::uint64_t budget = kDefaultPathBudget);

enum class Polarity { Plus, Minus };

/// Plus accepts iff Re(value) > 0 and k < Re(value); Minus accepts iff
/// Re(value) < 0 and k > Re(value).
bool dtm_predicate(Complex value, double k, Polarity polarity);

/// Number of grid points k = j * 2^(-n c) in [0, 2^(n c)] (Plus) or
/// [-2^(n c), 0] (Minus) that the predicate accepts for `value`.
std::uint64_t accepting_grid_points(Complex value, int n_times_c, Polarity polarity);

/// Smallest c >= 1 with path_count * 2^(-n c) < target.
int adaptive_precision(std::uint64_t path_count, std::size_t n, double target = 1e-6);

/// Re-part of the path sum rebuilt from accepting-pair counts of the two
/// threshold predicates, (plus_count - minus_count) * spacing. A yn query
/// repeats this for the yes projector (four counts in total). With no
/// precision given, adaptive_precision picks one.
PathSumResult counting_estimate(const ir::Circuit& circuit, std::uint64_t input_basis,
                                const Projector& projector, std::optional<int> precision_c = {},
                                std::uint64_t budget = kDefaultPathBudget, std::size_t jobs = 1);

nlohmann::json result_to_json(const PathSumResult& result);

}  // namespace rnqc::pathsum
