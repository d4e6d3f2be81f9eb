#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rnqc/error.hpp"

namespace rnqc::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes. Decision commands use 0 for YES / pass and 1 for NO / fail.
enum ExitCode : int {
  kExitYes = 0,
  kExitNo = 1,
  kExitInput = 2,      ///< parse error, bad option or unsupported request
  kExitResource = 3,   ///< register, enumeration or path budget exceeded
  kExitInternal = 4,   ///< numeric failure or broken invariant
};

int exit_code_for(ErrorKind kind) noexcept;

std::string sha256_hex(std::string_view bytes);

/// ISO-8601 UTC time, taken from SOURCE_DATE_EPOCH when that is set.
std::string manifest_timestamp();

/// {command, input_sha256, config, seed, version, timestamp}
nlohmann::json make_manifest(const std::string& command, std::string_view input_bytes,
                             const nlohmann::json& config, std::optional<std::uint64_t> seed);

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rnqc::cli
