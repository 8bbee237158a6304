#pragma once

#include <stdexcept>
#include <string>

namespace quasifrag {

// Invalid input: violated preconditions, malformed specs, out-of-range
// parameters. Recoverable by fixing the request.
struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// A computation was refused because it exceeds a configured cost cap.
// Message carries a cost estimate so the caller can decide to override.
struct CapError : std::runtime_error {
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

// Hard numerical failure: a quantity left its mathematically guaranteed
// range by more than the tolerance that separates round-off from bugs
// (e.g. correlation eigenvalue far outside [0,1]). Never silently clipped.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Eigenstate selection could not be resolved to a unique physical state
// (degenerate energy + momentum). Message lists the candidates.
struct AmbiguityError : std::runtime_error {
  explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quasifrag
