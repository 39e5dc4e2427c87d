#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace presym::cli {

enum class Command { analyze, hamiltonian, lagrangian, k_check, canonical_check, validate };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command command);

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int input_error = 2;
inline constexpr int inconsistent = 3;
inline constexpr int indeterminate = 4;
}  // namespace exit_code

/// Command-line values that take precedence over the [engine] section.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_generations;
  std::optional<std::size_t> trials;
};

struct Outcome {
  int exit_code = exit_code::success;
  nlohmann::ordered_json report;
  /// Messages for stderr (warnings and the error, if any).
  std::string diagnostics;
};

/// Runs one command on the contents of one problem file. Never throws for
/// analysis failures: they end the report and set the exit code.
Outcome run(Command command, const std::string& label, std::string_view contents, const Overrides& overrides);

/// Human-readable rendering of a report.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace presym::cli
