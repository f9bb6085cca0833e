#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mvgcca {

// Base of all library errors. kind() is a stable machine-readable tag;
// the CLI maps it into its JSON error envelope.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& m) : Error("dimension_error", m) {}
};

struct InputError : Error {
    explicit InputError(const std::string& m) : Error("input_error", m) {}
};

struct SingularMatrixError : Error {
    explicit SingularMatrixError(const std::string& m) : Error("singular_matrix", m) {}
};

struct ConfigurationError : Error {
    explicit ConfigurationError(const std::string& m) : Error("configuration_error", m) {}
};

struct StateError : Error {
    explicit StateError(const std::string& m) : Error("state_error", m) {}
};

struct DegenerateDataError : Error {
    explicit DegenerateDataError(const std::string& m) : Error("degenerate_data", m) {}
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error("io_error", m) {}
};

}  // namespace mvgcca
