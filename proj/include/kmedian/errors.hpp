#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kmedian {

/// Malformed edge-list input. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string &message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// No edge survived normalization.
class EmptyGraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed an out-of-range k, vertex id or parameter.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A(S) is undefined because S covers every vertex.
class DegenerateSetError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string &message, double residual)
        : std::runtime_error(message), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Exhaustive enumeration refused: subset count or graph size over the configured limit.
class BudgetExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kmedian
