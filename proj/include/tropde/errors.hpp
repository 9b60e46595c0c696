#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropde {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checked arithmetic on finite values left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A caller broke a documented precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

class NonHomogeneousDerivative : public Error {
public:
    NonHomogeneousDerivative()
        : Error("tropical derivative is only defined for equations without a finite free term") {}
};

class ResultTooLarge : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Raised when a solver observes a state its complexity argument rules out.
/// Never caught inside the library; the CLI maps it to exit code 3.
class InternalBoundViolation : public Error {
public:
    using Error::Error;
};

class InvalidWitness : public Error {
public:
    using Error::Error;
};

class TooManyVariables : public Error {
public:
    using Error::Error;
};

/// Syntax error in a system or solution file. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class DimacsError : public Error {
public:
    enum class Kind { MalformedHeader, ClauseTooLong, IndexOutOfRange, EmptyClause, BadToken };

    DimacsError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace tropde
