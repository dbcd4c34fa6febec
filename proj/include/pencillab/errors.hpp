#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pencillab {

struct ZeroDenominator : std::runtime_error {
  ZeroDenominator() : std::runtime_error("denominator is zero") {}
  explicit ZeroDenominator(const std::string& m) : std::runtime_error(m) {}
};

struct ConstantInput : std::runtime_error {
  explicit ConstantInput(const std::string& m = "input is a constant") : std::runtime_error(m) {}
};

struct CompositeInput : std::runtime_error {
  explicit CompositeInput(const std::string& m = "input is composite") : std::runtime_error(m) {}
};

struct CompositeBase : std::runtime_error {
  explicit CompositeBase(const std::string& m = "base function is composite") : std::runtime_error(m) {}
};

struct DegreeMismatch : std::runtime_error {
  explicit DegreeMismatch(const std::string& m) : std::runtime_error(m) {}
};

// Raised when a composition exits its expected degree; reaching it means a bug
// upstream (reduced inputs always satisfy the degree law), never user error.
struct DegreeLawViolation : std::logic_error {
  explicit DegreeLawViolation(const std::string& m) : std::logic_error(m) {}
};

struct SliceDegenerate : std::runtime_error {
  explicit SliceDegenerate(const std::string& m = "no usable slice within retry budget")
      : std::runtime_error(m) {}
};

struct SyntaxError : std::runtime_error {
  std::size_t position;
  SyntaxError(const std::string& m, std::size_t pos)
      : std::runtime_error(m + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnknownVariable : std::runtime_error {
  std::size_t position;
  UnknownVariable(const std::string& name, std::size_t pos)
      : std::runtime_error("unknown variable '" + name + "' (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

}  // namespace pencillab
