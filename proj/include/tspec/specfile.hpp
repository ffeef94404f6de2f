#pragma once

#include "tspec/spectrum.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace tspec {

/// The [run] section of a spec document.
struct RunConfig {
  std::optional<std::uint64_t> kmax;
  std::uint64_t guard = 10;
  std::uint64_t prime_horizon = 50;
  int degree_cap = 64;
  std::optional<std::uint64_t> k;
};

struct SpecFile {
  std::string source;
  EndoSpec spec;
  RunConfig run;
};

/// Reads a TOML document with sections [group], [endo] and [run]. Syntax and
/// shape problems raise Parse errors anchored at "source:line:column".
/// Group-theoretic validity is not checked here.
SpecFile parse_spec_string(const std::string& text, const std::string& source = "<string>");
SpecFile parse_spec_file(const std::filesystem::path& path);

/// Parses "p", "-p" or "p/q" into a normalized rational.
Rational parse_rational(const std::string& text);

}  // namespace tspec
