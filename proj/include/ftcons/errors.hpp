#pragma once

#include <stdexcept>
#include <string>

namespace ftcons {

/// A parameter set or topology violates a stated constraint.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A function was evaluated outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The symmetric eigensolver did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : std::runtime_error(what + " after " + std::to_string(iterations) + " sweeps"),
          iterations_(iterations) {}

    [[nodiscard]] int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

/// A simulated channel became NaN or infinite.
class NumericalAbort : public std::runtime_error {
public:
    NumericalAbort(double time, std::string channel)
        : std::runtime_error("non-finite value in channel '" + channel +
                             "' at t = " + std::to_string(time)),
          time_(time),
          channel_(std::move(channel)) {}

    [[nodiscard]] double time() const noexcept { return time_; }
    [[nodiscard]] const std::string& channel() const noexcept { return channel_; }

private:
    double time_;
    std::string channel_;
};

/// A scenario file could not be parsed or is inconsistent. The message names the
/// section and key where possible.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ftcons
