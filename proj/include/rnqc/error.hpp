#pragma once

#include <stdexcept>
#include <string>

namespace rnqc {

/// Broad failure categories. The CLI maps them onto exit codes.
enum class ErrorKind {
  Parse,        ///< malformed input file or text
  Config,       ///< invalid option or parameter value
  Unsupported,  ///< valid request the real gate set cannot express (e.g. T)
  Resource,     ///< register, enumeration or path budget exceeded
  Numeric,      ///< zero state, zero-mass branch, overflow
  Invariant,    ///< an internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace rnqc
