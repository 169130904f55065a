#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vud {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when recursion passes through negation. `cycle` lists the
/// predicates of one offending dependency cycle, starting and ending at the
/// same predicate.
class NotStratifiable : public Error {
public:
    explicit NotStratifiable(std::vector<std::string> cycle);
    const std::vector<std::string>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class InvalidRequest : public Error {
public:
    using Error::Error;
};

class AlreadyDerivable : public Error {
public:
    using Error::Error;
};

class Unrealizable : public Error {
public:
    explicit Unrealizable(const std::string& message, std::vector<std::string> trace = {})
        : Error(message), trace_(std::move(trace)) {}
    const std::vector<std::string>& trace() const noexcept { return trace_; }

private:
    std::vector<std::string> trace_;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

/// A search exceeded its configured size limit.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

} // namespace vud
