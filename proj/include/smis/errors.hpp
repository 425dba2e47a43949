#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smis {

/// Invalid user-facing configuration: unknown family, bad parameter range, bad flag value.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid argument to a library operation (e.g. k > K, non-permutation order).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A node program broke the CONGEST contract (payload budget, one message per
/// directed edge per round, non-neighbor destination).
class CongestViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A node program returned an ill-formed action (e.g. sleeping into the past).
class ProgramError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace smis
