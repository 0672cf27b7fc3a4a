#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbvp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters violate an admissibility inequality (denominator ≤ 0 or a range check).
class DegenerateParams : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function (t ∉ [0,1], θ ∉ (0,1/2), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// a(t) or f(t,u) produced NaN/inf, or an iterate fell below the f domain.
class NonFiniteEvaluation : public Error {
public:
    using Error::Error;
};

/// a(t) < 0 or f(t,u) < 0 at a sampled node.
class NegativeData : public Error {
public:
    using Error::Error;
};

class NotConverged : public Error {
public:
    using Error::Error;
};

class SingularJacobian : public Error {
public:
    using Error::Error;
};

/// Expression source could not be parsed. `offset()` is the byte offset of the failure.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public Error {
public:
    using Error::Error;
};

class ForbiddenVariable : public Error {
public:
    using Error::Error;
};

class EvalError : public Error {
public:
    using Error::Error;
};

class UnboundVariable : public Error {
public:
    using Error::Error;
};

/// Malformed configuration file or command-line argument.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace dbvp
