#pragma once
/// @file errors.hpp
/// Error types shared across modules.

#include <stdexcept>
#include <string>

namespace hallsym {

/// A configured resource bound (degree cap, enumeration bound, field bound)
/// would be exceeded.  The CLI maps this to its own exit code.
struct BoundError : std::runtime_error {
  explicit BoundError(const std::string& what) : std::runtime_error(what) {}
};

/// An invariant the mathematics guarantees failed to hold at runtime —
/// always a bug, never user error.
struct InternalCheckError : std::logic_error {
  explicit InternalCheckError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hallsym
