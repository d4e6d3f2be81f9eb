#include "rnqc/cnf/three_cnf.hpp"

#include <cstdlib>

namespace rnqc::cnf {

namespace {

bool literal_value(std::uint64_t assignment, Literal lit) {
  const bool v = (assignment >> (std::abs(lit) - 1)) & 1U;
  return lit > 0 ? v : !v;
}

}  // namespace

std::uint64_t ThreeCnf::extend(std::uint64_t original_assignment) const {
  std::uint64_t x = original_assignment;
  for (const AuxDefinition& def : mapping) {
    if (literal_value(x, def.a) || literal_value(x, def.b)) {
      x |= std::uint64_t{1} << (def.aux_var - 1);
    }
  }
  return x;
}

ThreeCnf to_3cnf(const CnfFormula& formula) {
  ThreeCnf out;
  out.original_vars = formula.num_vars;
  int next_var = static_cast<int>(formula.num_vars);

  for (const Clause& input : formula.clauses) {
    Clause clause = input;
    while (clause.size() > 3) {
      const int y = ++next_var;
      const Literal a = clause[0];
      const Literal b = clause[1];
      out.mapping.push_back({y, a, b});
      out.base.clauses.push_back({-y, a, b});
      out.base.clauses.push_back({y, -a});
      out.base.clauses.push_back({y, -b});
      out.is_definition.insert(out.is_definition.end(), 3, true);
      clause.erase(clause.begin(), clause.begin() + 2);
      clause.insert(clause.begin(), y);
    }
    out.base.clauses.push_back(std::move(clause));
    out.is_definition.push_back(false);
  }
  out.aux_vars = static_cast<std::size_t>(next_var) - formula.num_vars;
  out.base.num_vars = static_cast<std::size_t>(next_var);
  return out;
}

}  // namespace rnqc::cnf
