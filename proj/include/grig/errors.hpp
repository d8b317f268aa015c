#pragma once

#include <stdexcept>
#include <string>

namespace grig {

/// Malformed user input: bad letters, unparsable words, level mismatches.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string &what) : std::runtime_error(what) {}
};

/// A configured size or depth guard would be exceeded.
class ResourceError : public std::runtime_error {
public:
  explicit ResourceError(const std::string &what)
      : std::runtime_error(what) {}
};

/// A broken internal invariant (e.g. the order cap was hit).
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string &what) : std::logic_error(what) {}
};

} // namespace grig
