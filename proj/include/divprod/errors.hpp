#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "divprod/integer_set.hpp"

namespace divprod {

enum class ErrorKind { invalid_argument, resource_limit, precondition, internal };

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorKind::invalid_argument, message) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message)
      : Error(ErrorKind::resource_limit, message) {}
};

// An operation's mathematical hypothesis does not hold for its input
// (for instance a set that fails P_h handed to the injection verifier).
class PreconditionFailure : public Error {
 public:
  PreconditionFailure(const std::string& message, std::optional<Witness> witness)
      : Error(ErrorKind::precondition, message), witness_(std::move(witness)) {}
  const std::optional<Witness>& witness() const noexcept { return witness_; }

 private:
  std::optional<Witness> witness_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error(ErrorKind::internal, message) {}
};

}  // namespace divprod
