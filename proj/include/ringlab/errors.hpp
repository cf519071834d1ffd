#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error in a ring-spec or element literal. Carries the byte offset
/// into the input and a description of what was expected there.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, const std::string& expected)
      : Error(what + " at offset " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Ring construction would exceed the configured order cap.
class OrderCapError : public Error {
 public:
  OrderCapError(const std::string& spec, std::uint64_t cap)
      : Error("ring order of " + spec + " exceeds cap " + std::to_string(cap)) {}
};

/// Two elements from different rings were combined.
class RingMismatchError : public Error {
 public:
  explicit RingMismatchError(const std::string& msg) : Error("ring mismatch: " + msg) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& msg) : Error("precondition violated: " + msg) {}
};

/// A self-checked construction produced an object failing its own
/// postcondition. Distinct from PreconditionError: this is an internal bug.
class PostconditionError : public Error {
 public:
  explicit PostconditionError(const std::string& msg) : Error("postcondition failed: " + msg) {}
};

/// The per-command time budget or an enumeration work cap was exhausted.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg) : Error("budget exceeded: " + msg) {}
};

}  // namespace ringlab
