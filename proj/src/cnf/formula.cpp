#include "rnqc/cnf/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "rnqc/error.hpp"

namespace rnqc::cnf {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "DIMACS line " + std::to_string(line) + ": " + msg);
}

bool is_tautology(const Clause& clause) {
  for (Literal a : clause) {
    if (std::find(clause.begin(), clause.end(), -a) != clause.end()) return true;
  }
  return false;
}

struct ClauseMask {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

std::vector<ClauseMask> masks_of(const CnfFormula& formula) {
  std::vector<ClauseMask> out;
  out.reserve(formula.clauses.size());
  for (const Clause& clause : formula.clauses) {
    ClauseMask m;
    for (Literal lit : clause) {
      const std::uint64_t b = std::uint64_t{1} << (std::abs(lit) - 1);
      (lit > 0 ? m.pos : m.neg) |= b;
    }
    out.push_back(m);
  }
  return out;
}

bool satisfies(const std::vector<ClauseMask>& masks, std::uint64_t x) {
  for (const ClauseMask& m : masks) {
    if (((x & m.pos) | (~x & m.neg)) == 0) return false;
  }
  return true;
}

}  // namespace

void CnfFormula::validate(bool allow_tautologies) const {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const Clause& clause = clauses[i];
    const std::string where = "clause " + std::to_string(i + 1);
    if (clause.empty()) throw Error(ErrorKind::Parse, where + " is empty");
    for (Literal lit : clause) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > num_vars) {
        throw Error(ErrorKind::Parse, where + ": literal " + std::to_string(lit) +
                                          " out of range for " + std::to_string(num_vars) +
                                          " variables");
      }
    }
    if (!allow_tautologies && is_tautology(clause)) {
      throw Error(ErrorKind::Parse, where + " is a tautology (contains v and -v)");
    }
  }
}

bool CnfFormula::evaluate(std::uint64_t assignment) const {
  for (const Clause& clause : clauses) {
    bool sat = false;
    for (Literal lit : clause) {
      const bool value = (assignment >> (std::abs(lit) - 1)) & 1U;
      if (value == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::size_t CnfFormula::max_width() const {
  std::size_t w = 0;
  for (const Clause& c : clauses) w = std::max(w, c.size());
  return w;
}

CnfFormula parse_dimacs(std::string_view text, ParseOptions options) {
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<Clause> clauses;
  Clause current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (line.front() == 'c') continue;
    if (line.front() == '%') break;

    std::istringstream in{std::string(line)};
    if (line.front() == 'p') {
      if (header) parse_fail(line_no, "duplicate header");
      std::string p, fmt;
      long long vars = -1, count = -1;
      std::string extra;
      if (!(in >> p >> fmt >> vars >> count) || p != "p" || fmt != "cnf" || vars < 0 ||
          count < 0 || (in >> extra)) {
        parse_fail(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      if (vars > 62) parse_fail(line_no, "more than 62 variables is not supported");
      header = {static_cast<std::size_t>(vars), static_cast<std::size_t>(count)};
      continue;
    }
    if (!header) parse_fail(line_no, "clause before 'p cnf' header");

    std::string token;
    while (in >> token) {
      long long lit = 0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), lit);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        parse_fail(line_no, "bad literal '" + token + "'");
      }
      if (lit == 0) {
        if (current.empty()) parse_fail(line_no, "empty clause");
        clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::llabs(lit)) > header->first) {
        parse_fail(line_no, "literal " + token + " out of range for " +
                                std::to_string(header->first) + " variables");
      }
      if (std::find(current.begin(), current.end(), lit) == current.end()) {
        current.push_back(static_cast<Literal>(lit));
      }
    }
  }

  if (!header) throw Error(ErrorKind::Parse, "DIMACS: missing 'p cnf' header");
  if (!current.empty()) throw Error(ErrorKind::Parse, "DIMACS: last clause is not terminated by 0");
  if (clauses.size() != header->second) {
    throw Error(ErrorKind::Parse, "DIMACS: header declares " + std::to_string(header->second) +
                                      " clauses, body has " + std::to_string(clauses.size()));
  }

  CnfFormula formula{header->first, std::move(clauses)};
  if (options.keep_tautologies) std::erase_if(formula.clauses, is_tautology);
  formula.validate(false);
  return formula;
}

CnfFormula read_dimacs_file(const std::string& path, ParseOptions options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(buffer.str(), options);
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const Clause& clause : formula.clauses) {
    for (Literal lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::uint64_t count_models(const CnfFormula& formula) {
  if (formula.num_vars > kMaxCountVars) {
    throw Error(ErrorKind::Resource, "model counting by enumeration is limited to " +
                                         std::to_string(kMaxCountVars) + " variables");
  }
  const auto masks = masks_of(formula);
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars;
  std::uint64_t s = 0;
  for (std::uint64_t x = 0; x < total; ++x) s += satisfies(masks, x) ? 1 : 0;
  return s;
}

}  // namespace rnqc::cnf
