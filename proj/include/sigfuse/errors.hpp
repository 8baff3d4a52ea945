#pragma once

#include <stdexcept>
#include <string>

namespace sigfuse {

// Malformed input that never was valid JSON / JSONL.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed JSON that is missing required fields or has wrong shapes.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid data that violates a declared invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad run configuration (missing seeds, out-of-range knobs, unknown keys).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Retryable provider/network failure.
class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-retryable inconsistency between artifacts (duplicate decisions,
// dimension mismatches, conflicting origin entries).
class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sigfuse
