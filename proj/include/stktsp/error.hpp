#pragma once

#include <stdexcept>
#include <string>

namespace stktsp {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorKind : int {
    usage = 2,
    guard = 3,
    invalid_input = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed or inconsistent input: bad metric, bad distribution, invalid tour.
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& what) : Error(ErrorKind::invalid_input, what) {}
};

/// A size or state-space guard was exceeded; the message names the limit.
class GuardError : public Error {
public:
    explicit GuardError(const std::string& what) : Error(ErrorKind::guard, what) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

}  // namespace stktsp
