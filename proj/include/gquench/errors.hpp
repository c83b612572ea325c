#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gquench {

/// Failure of a numerical procedure (eigensolve, propagation, singular input).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values encountered while evolving a state; carries the step index.
class PropagationError : public NumericError {
public:
    PropagationError(const std::string& what, std::size_t step)
        : NumericError(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Malformed scenario configuration; carries the 1-based line number.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    explicit ConfigError(const std::string& what)
        : std::runtime_error(what), line_(0) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace gquench
