#pragma once

#include <stdexcept>
#include <string>

namespace robin {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the mathematical domain of an operation (NaN/Inf, |k| > 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix or sequence size below the minimum an operation supports.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at (or too close to) a resolvent pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Parameter outside its declared range (q, a, ...).
class ParamError : public Error {
public:
    using Error::Error;
};

/// An iterative solver did not meet its residual contract.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// A declared decay class cannot certify a finite tail for the requested sum.
class DivergentTailError : public Error {
public:
    using Error::Error;
};

/// Generator sequence fails (-Delta g)_n >= 0 at some site.
class SuperharmonicityViolation : public Error {
public:
    using Error::Error;
};

/// Contour tracing found no sign change on the whole grid.
class EmptyCurveError : public Error {
public:
    using Error::Error;
};

/// A counting contour passes too close to an eigenvalue.
class ContourTooCloseError : public Error {
public:
    using Error::Error;
};

/// Witness construction called with a point off the enclosure boundary.
class NotOnBoundaryError : public Error {
public:
    using Error::Error;
};

/// Witness construction called with a real target point.
class RealTargetError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or CLI configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace robin
