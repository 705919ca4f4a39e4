#pragma once

#include <stdexcept>
#include <string>

namespace pcadyn {

/// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class DegreeCapExceeded : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// Input violates a documented precondition (bad shape, wrong degree, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A map or curve is degenerate in a way that makes the requested computation
/// meaningless (identically zero eliminant, all minors zero, ...).
class Degenerate : public Error {
public:
    using Error::Error;
};

/// A curve, branch or component is not invariant (or not mapped where claimed).
class NotInvariant : public Error {
public:
    using Error::Error;
};

/// Numerical failure: non-convergence, failed back-substitution, ...
class SolverFailure : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace pcadyn
