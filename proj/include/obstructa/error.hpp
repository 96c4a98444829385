#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obstructa {

// Base for all library errors. Messages are meant to be shown to a user.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (nu(0), k > m, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A resolution window was too small to determine the requested groups.
class WindowError : public Error {
public:
    using Error::Error;
};

// Relation files and fixture files.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A derivation step produced a verdict other than the one the chain requires.
class VerdictMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace obstructa
