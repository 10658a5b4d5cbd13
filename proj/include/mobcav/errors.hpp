#pragma once

#include <stdexcept>
#include <string>

namespace mobcav {

/// Invalid scenario/parameter configuration. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside an operation's domain (bad index, position outside the cavity, ...).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated sum whose estimated tail exceeds the requested tolerance.
/// CLI maps this to exit code 3.
class NonConvergence : public std::runtime_error {
public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A closed-form expression left the representable range (evaluation too close
/// to a wall divergence).
class OverflowSignal : public std::runtime_error {
public:
  explicit OverflowSignal(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mobcav
