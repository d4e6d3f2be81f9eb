#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rnqc::cnf {

/// Signed DIMACS literal: +v is variable v, -v its negation (v >= 1).
using Literal = int;
using Clause = std::vector<Literal>;

/// Assignments are bitmasks: bit (v - 1) holds the value of variable v.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws Parse on an empty clause, an out-of-range literal, or (unless
  /// `allow_tautologies`) a clause containing both v and -v.
  void validate(bool allow_tautologies = false) const;

  bool evaluate(std::uint64_t assignment) const;
  std::size_t max_width() const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

struct ParseOptions {
  /// Drop clauses containing v and -v instead of rejecting them.
  bool keep_tautologies = false;
};

/// Reads DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>` header,
/// then zero-terminated clauses which may span lines. A line starting with
/// `%` ends the body. Repeated literals within a clause are merged.
CnfFormula parse_dimacs(std::string_view text, ParseOptions options = {});
CnfFormula read_dimacs_file(const std::string& path, ParseOptions options = {});
std::string write_dimacs(const CnfFormula& formula);

inline constexpr std::size_t kMaxCountVars = 24;

/// Exact number of satisfying assignments by enumeration. Throws Resource
/// above kMaxCountVars variables.
std::uint64_t count_models(const CnfFormula& formula);

}  // namespace rnqc::cnf
