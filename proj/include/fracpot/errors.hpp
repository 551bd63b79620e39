#pragma once

#include <stdexcept>
#include <string>

namespace fracpot {

// Series truncation target cannot be met within the configured term budget.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// An adaptive integral did not reach its tolerance within the panel budget.
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside the mathematical domain of the operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Evaluation requested at a point where the quantity is singular.
struct SingularInput : std::runtime_error {
    explicit SingularInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Discrete operator error estimate exceeds tolerance on the supplied grid.
struct GridTooCoarse : std::runtime_error {
    explicit GridTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or out-of-domain experiment configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fracpot
