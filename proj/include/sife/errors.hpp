#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sife {

/// Invalid argument or violated container invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested extent does not fit the array (e.g. a halo wider than the data).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Two operands disagree in shape.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time step or radius exceeds the bound under which a scheme is stable.
/// The message names the violated bound.
class StabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ParseErrorKind { bad_magic, malformed_header, truncated, malformed_payload, value_out_of_range };

const char* to_string(ParseErrorKind kind) noexcept;

/// Malformed image file. `offset` is the byte at which decoding failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& what);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

}  // namespace sife
