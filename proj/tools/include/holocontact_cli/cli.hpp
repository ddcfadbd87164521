#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace holocontact::cli {

inline constexpr const char* kSchemaVersion = "holocontact-report/1";
inline constexpr const char* kToolVersion = "0.3.0";

enum ExitCode : int { kVerified = 0, kRefuted = 1, kInconclusive = 2, kInputError = 3 };

/// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::string> task;
  std::optional<int> order;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  nlohmann::json report;
  int exit_code = kInputError;
};

/// Parses the config text and applies overrides. Throws InputError with the
/// offending key path (or byte offset for syntax errors).
nlohmann::json load_config(const std::string& text, const Overrides& overrides,
                           std::optional<double> default_tolerance = {});

/// Runs the configured task. Errors from the core library (bad expressions,
/// singular Grams, ...) are reported as input errors.
RunResult run(const nlohmann::json& config);

}  // namespace holocontact::cli
