#pragma once

#include <stdexcept>
#include <string>

namespace nlft {

// Bad arguments: radix mismatch, off-grid frequency, negative input to beta.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a cosh/sinh argument would overflow (h|w| or ||f||_1 >= 700).
class InputTooLarge : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Frequency extent finer than the function's cell width is required.
class ResolutionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input file. `path()` names the offending JSON field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field_path, const std::string& message)
        : std::runtime_error(field_path.empty() ? message : field_path + ": " + message),
          path_(std::move(field_path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace nlft
