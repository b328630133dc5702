#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsmt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different frames.
class FrameMismatch : public Error {
 public:
  FrameMismatch(unsigned a, unsigned b)
      : Error("frame mismatch: n=" + std::to_string(a) + " vs n=" + std::to_string(b)) {}
};

/// Argument outside the operation's domain (out-of-range atom, non-isotone mask, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Refusal to materialize something too large. Carries the estimate being protected against.
class CapacityError : public Error {
 public:
  CapacityError(std::string what, std::string estimated_elements, std::string estimated_bytes)
      : Error(std::move(what) + " (estimated elements: " + estimated_elements +
              ", estimated memory: " + estimated_bytes + ")"),
        elements_(std::move(estimated_elements)),
        bytes_(std::move(estimated_bytes)) {}

  const std::string& estimated_elements() const noexcept { return elements_; }
  const std::string& estimated_bytes() const noexcept { return bytes_; }

 private:
  std::string elements_;
  std::string bytes_;
};

/// Mass or weight assignment that violates its invariants.
class MassError : public Error {
 public:
  using Error::Error;
};

/// k12 = 1: the orthogonal sum does not exist.
class FullContradiction : public Error {
 public:
  FullContradiction() : Error("full contradiction: conflict k12 = 1, orthogonal sum does not exist") {}
};

/// Malformed input document (mass-assignment file, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error or out-of-range atom, located by byte offset.
class ParseError : public Error {
 public:
  enum class Kind { syntax, atom_out_of_range };

  ParseError(Kind kind, std::size_t offset, std::string message, std::vector<std::string> expected = {})
      : Error(format(offset, message, expected)),
        kind_(kind),
        offset_(offset),
        expected_(std::move(expected)) {}

  /// Same error, with `context` prefixed to the message.
  ParseError(std::string context, const ParseError& inner)
      : Error(context + ": " + inner.what()),
        kind_(inner.kind_),
        offset_(inner.offset_),
        expected_(inner.expected_) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::string& message,
                            const std::vector<std::string>& expected) {
    std::string out = message + " at offset " + std::to_string(offset);
    if (!expected.empty()) {
      out += "; expected one of:";
      for (const auto& e : expected) out += " " + e;
    }
    return out;
  }

  Kind kind_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace dsmt
