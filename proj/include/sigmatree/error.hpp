#pragma once

#include <stdexcept>
#include <string>

namespace sigmatree {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidInput,       // malformed document, unknown id, violated precondition
  ResourceLimit,      // ball expansion exceeded the vertex budget
  Inconclusive,       // PartiallyMarked data or a ball too shallow to decide
  Consistency,        // a result contradicting a proven structural fact
  NotFaced,           // a witness was requested for an end no pair faces
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a ball cannot answer a question; carries the radius that would.
class BallTooShallow : public Error {
 public:
  BallTooShallow(const std::string& message, int required_depth)
      : Error(ErrorKind::Inconclusive, message), required_depth_(required_depth) {}

  int required_depth() const noexcept { return required_depth_; }

 private:
  int required_depth_;
};

}  // namespace sigmatree
