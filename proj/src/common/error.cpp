#include "rnqc/error.hpp"

namespace rnqc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Config: return "invalid configuration";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Resource: return "resource limit";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Invariant: return "invariant violation";
  }
  return "error";
}

}  // namespace rnqc
