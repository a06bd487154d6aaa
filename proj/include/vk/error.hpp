#ifndef VK_ERROR_HPP
#define VK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A domain or variable reference that does not fit the operation
/// (projection outside the label, unknown variable, mismatched universes).
class DomainError : public Error {
public:
  using Error::Error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

/// The valuation algebra lacks a capability the operation requires.
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// A table or search space exceeds the configured limit.
class ResourceError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Malformed input document. Line and column are 1-based; zero when the
/// problem is structural rather than syntactic.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace vk

#endif  // VK_ERROR_HPP
