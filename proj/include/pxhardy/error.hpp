#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pxhardy {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the expression parser. Carries the byte offset of the offending
/// token and the set of tokens that would have been accepted there.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t offset, std::vector<std::string> expected = {});

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation hit a mathematical singularity or produced a non-finite value.
class EvalError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace pxhardy
