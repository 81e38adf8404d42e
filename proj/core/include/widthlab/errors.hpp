#pragma once

#include <stdexcept>
#include <string>

namespace widthlab {

// Bad user input: malformed JSON, out-of-range index, singular matrix, ...
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failure at runtime: degenerate body, solver bracket exhausted,
// non-finite integrand value.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace widthlab
