#pragma once

#include <stdexcept>
#include <string>

namespace rotnum {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A base point outside the state space of its system.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An observable, lift or derivative produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A fiber parameter outside the family's interval J.
class ParameterRangeError : public Error {
public:
    using Error::Error;
};

/// The lift coordinate left the range where binary64 keeps unit resolution.
class PrecisionError : public Error {
public:
    using Error::Error;
};

/// A hypothesis required by a check does not hold for the given inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class InvalidMatrixError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace rotnum
