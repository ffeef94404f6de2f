#pragma once

#include <stdexcept>
#include <string>

namespace tspec {

/// Failure categories. Each maps to a distinct process exit code in the CLI.
enum class ErrorKind {
  Domain = 1,           // bad argument to a library operation
  Parse = 2,            // malformed input document
  InvalidSpec = 3,      // document parses but does not describe a valid endomorphism
  WindowExhausted = 4,  // spectrum window too short for recurrence reconstruction
  InfiniteValue = 5,    // an infinite Reidemeister number where finiteness is required
  OracleMismatch = 6,   // two independent computations disagree
  Capability = 7,       // configured size bound exceeded
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace tspec
