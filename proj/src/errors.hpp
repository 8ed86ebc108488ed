#pragma once

#include <stdexcept>
#include <string>

namespace crn {

// Base of every error the library raises on purpose. The C layer maps the
// subclasses onto status codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(format(msg, line, column)), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& msg, int line, int column) {
        if (line <= 0) return msg;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
    }
    int line_;
    int column_;
};

// A mathematical hypothesis of the requested check does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Shapes or ids that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Enumeration or expansion bigger than the configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& msg, long long partial) : Error(msg), partial_(partial) {}
    long long partial() const { return partial_; }

private:
    long long partial_;
};

// Evaluation outside the domain (non-positive concentrations and the like).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace crn
