#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace constellation::cli {

/// exit_code: 0 success/valid/found, 1 verification failed or not found,
/// 2 usage or input error.
struct CommandOutcome {
  int exit_code = 0;
  std::string report;
  std::optional<nlohmann::json> payload;
  /// The payload was requested with --json.
  bool emit_json = false;

  std::string payload_text() const { return payload ? payload->dump(2) + "\n" : std::string(); }
};

/// Parses and runs one command; args excludes the program name.
CommandOutcome run_command(const std::vector<std::string>& args);

}  // namespace constellation::cli
