#pragma once

#include "tspec/specfile.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tspec {

enum class Command { Spectrum, Zeta, Heights, Orbits, Classify, Verify };

std::optional<Command> parse_command(std::string_view name);
std::string to_string(Command c);

/// Command-line overrides of the [run] section.
struct CommandOptions {
  std::optional<std::uint64_t> kmax;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> guard;
};

struct CommandResult {
  std::string json;                      // the report, newline-terminated
  std::vector<std::string> diagnostics;  // human-readable notes for stderr
  int status = 0;                        // 0, or 6 when a verification check failed
};

/// Validates the spec and renders one report. Identical inputs give byte-identical JSON.
/// Library errors propagate as tspec::Error.
CommandResult run_command(Command command, const SpecFile& file, const CommandOptions& options = {});

/// Process exit code for a library error.
int exit_code(const Error& e);

}  // namespace tspec
