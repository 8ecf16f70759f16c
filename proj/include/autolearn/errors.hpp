#pragma once

#include <stdexcept>
#include <string>

namespace autolearn {

// Syntax error in an input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Semantically inconsistent input (contradictory samples, labels disagreeing
// with the teacher). Distinct from syntax errors for the CLI exit contract.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace autolearn
