#pragma once

#include <stdexcept>
#include <string>

namespace treeverb {

// Malformed input text (DSL, vertex strings, parity strings, CLI values).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line(line) {}
  int line;
};

// Well-formed input outside an operation's domain (wrong degree, violated
// precondition, unsatisfiable instance, resource limit).
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace treeverb
