#pragma once

#include <stdexcept>
#include <string>

namespace nurecon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. x ∉ [0,1]).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter value (m = 0, ρ ≤ 1, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A documented hypothesis of a bound or formula does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Inconsistent experiment or hybrid configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// API misuse, e.g. samples and operator built on different frequency sets.
class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Numerical failure. Carries the best error estimate reached, when there is one.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what, double achieved_estimate = -1.0)
        : Error(what), achieved_estimate_(achieved_estimate) {}

    double achieved_estimate() const noexcept { return achieved_estimate_; }

private:
    double achieved_estimate_;
};

}  // namespace nurecon
