#pragma once

#include <stdexcept>
#include <string>

namespace xpjost {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (Re z <= 0, bad modulus, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative or quadrature procedure failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at (or numerically on top of) a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Principal-value evaluation point too close to the window edge.
class WindowError : public Error {
public:
    using Error::Error;
};

/// Internal consistency check failed (e.g. Im[e^{iθ}ζ] not small).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Rows v1, v2 of the amplitude system are collinear (exceptional case).
class CollinearityError : public Error {
public:
    using Error::Error;
};

/// |F| vanished on a contour edge during argument-principle counting.
class BoundaryZeroError : public Error {
public:
    using Error::Error;
};

/// Malformed model or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace xpjost
