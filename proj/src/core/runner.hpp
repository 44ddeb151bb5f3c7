#pragma once

#include <string>
#include <vector>

namespace eqym {

inline constexpr const char* kToolName = "eqym";
inline constexpr const char* kToolVersion = "0.1.0";

struct Artifact {
  std::string name;  // relative path inside the run directory
  std::string data;
};

// Exit-code contract: 0 pass, 2 validation error, 3 numerical-acceptance failure.
struct RunResult {
  int exit_code = 0;
  bool passed = false;
  std::string config;   // resolved config, JSON text ("{}" when it could not be resolved)
  std::string summary;  // JSON text
  std::string message;  // one-line outcome for terminals
  std::vector<Artifact> artifacts;
};

// Fills defaults and rejects unknown keys or wrong types. Throws ValidationError.
std::string resolve_config(const std::string& config_json);

// Never throws for bad input or failed checks; those land in exit_code and summary.
RunResult execute(const std::string& config_json);

// Writes config.json, summary.json and every artifact under dir.
void write_run(const RunResult& r, const std::string& dir);

// "%.17g"
std::string fmt_double(double v);

}  // namespace eqym
