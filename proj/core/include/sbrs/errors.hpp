#pragma once

#include <stdexcept>
#include <string>

namespace sbrs {

// Malformed input file (bad JSON, missing/mistyped field).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally well-formed data that violates a model invariant
// (zero students, stop claimed twice, coordinates outside the square, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No feasible plan exists (or was found) under the active constraints.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem too large for an exact solver's enumeration limits.
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sbrs
