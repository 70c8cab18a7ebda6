#pragma once

#include <stdexcept>
#include <string>

namespace advsac {

// Vector length / shape disagreement between caller and callee.
struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Value outside its documented range (action component, amplitude, ...).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Call sequence violation (step after done, backward without forward, ...).
struct ProtocolError : std::logic_error {
  explicit ProtocolError(const std::string& what) : std::logic_error(what) {}
};

// Bad configuration: unknown env id, mode/dim mismatch, schema violation.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / serialization failure.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace advsac
