#pragma once

#include <stdexcept>
#include <string>

namespace ifsim {

// Error taxonomy used across the library. All derive from std::runtime_error
// so callers can catch broadly when they only care about success/failure.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularityError : std::runtime_error {
    explicit SingularityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SearchExhaustedError : std::runtime_error {
    explicit SearchExhaustedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ifsim
