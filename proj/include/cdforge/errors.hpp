#pragma once

#include <stdexcept>
#include <string>

namespace cdforge {

// Invalid input: malformed files, unknown vertices, violated preconditions.
// The CLI maps this to exit code 1.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed: eigensolver breakdown, quadrature or
// optimizer nonconvergence.  The CLI maps this to exit code 2.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cdforge
