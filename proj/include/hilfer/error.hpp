#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hilfer {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

/// A series or iteration did not settle within its term/iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Invalid user input: problem parameters, configuration, file contents.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& reason)
        : Error(field + ": " + reason), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class MeshMismatchError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace hilfer
