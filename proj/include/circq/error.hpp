#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A field was evaluated outside its mathematical domain (log of a
/// non-positive number, division by zero, ...) or a point lies outside the
/// manifold's domain box.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The ordering 0 < B < C < A does not hold.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Raised for malformed inputs that are not expressions: spec files,
/// degenerate vectors or planes, coefficient vectors off the unit sphere.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace circq
