#pragma once

#include <stdexcept>
#include <string>

namespace scdg {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (trace files, groups files). Carries a 1-based line
// number when one is known; line() == 0 means "no specific line".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    explicit ParseError(const std::string& message) : ParseError(0, message) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// Structural violations in binary-ish artifacts: bad magic, unsupported
// version, truncated or inconsistent matrix/model files.
class FormatError : public Error {
public:
    using Error::Error;
};

// Dimension or group-order mismatch between matrices that must agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

}  // namespace scdg
