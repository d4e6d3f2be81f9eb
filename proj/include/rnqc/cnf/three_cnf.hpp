#pragma once

#include "rnqc/cnf/formula.hpp"

namespace rnqc::cnf {

/// aux_var <-> (a OR b). `a` and `b` may themselves be earlier aux variables.
struct AuxDefinition {
  int aux_var;
  Literal a;
  Literal b;
};

/// Width <= 3 formula that is count-preserving for the input formula.
///
/// Variables 1..original_vars are the input's variables, the next aux_vars
/// are introduced abbreviations. Every original assignment extends to exactly
/// one aux assignment satisfying the definitions, so model counts agree.
struct ThreeCnf {
  CnfFormula base;
  std::size_t original_vars = 0;
  std::size_t aux_vars = 0;
  std::vector<AuxDefinition> mapping;
  /// Parallel to base.clauses: true for the three clauses of a definition.
  std::vector<bool> is_definition;

  /// The unique extension of an original assignment to all variables.
  std::uint64_t extend(std::uint64_t original_assignment) const;
};

/// Splits every clause wider than three with full biconditional definitions
///   y <-> (l_a OR l_b):  (-y l_a l_b) (y -l_a) (y -l_b)
/// replacing (l_a l_b l_c ...) by (y l_c ...). Inputs already of width <= 3
/// come back unchanged with aux_vars = 0.
ThreeCnf to_3cnf(const CnfFormula& formula);

}  // namespace rnqc::cnf
