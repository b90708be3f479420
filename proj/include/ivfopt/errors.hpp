#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ivfopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic requested on an interval with an infinite endpoint.
class ExtendedArithmeticError : public Error {
public:
    using Error::Error;
};

/// Interval constructed with lo > hi or a NaN endpoint.
class InvalidIntervalError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class EmptyFamilyError : public Error {
public:
    using Error::Error;
};

/// Syntax error in an IVF document, with 1-based line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A point where an error is witnessed (lower endpoint above upper, evaluation outside domain, ...).
class WitnessError : public Error {
public:
    WitnessError(const std::string& msg, std::vector<double> witness)
        : Error(msg), witness_(std::move(witness)) {}

    const std::vector<double>& witness() const noexcept { return witness_; }

private:
    std::vector<double> witness_;
};

class EndpointOrderViolation : public WitnessError {
public:
    using WitnessError::WitnessError;
};

class DomainCoverageError : public WitnessError {
public:
    using WitnessError::WitnessError;
};

/// Two overlapping pieces disagree at a shared point.
class PieceConflict : public WitnessError {
public:
    using WitnessError::WitnessError;
};

class OutOfDomainError : public WitnessError {
public:
    using WitnessError::WitnessError;
};

/// An endpoint expression produced a non-finite value (ln of a non-positive argument, division by zero).
class EvaluationError : public WitnessError {
public:
    using WitnessError::WitnessError;
};

class UnknownCorpusEntry : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A consequence of a proven statement failed on the sampled grid; signals a grid/tolerance mismatch.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace ivfopt
