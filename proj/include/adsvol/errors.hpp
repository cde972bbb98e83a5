#pragma once

#include <stdexcept>
#include <string>

namespace adsvol {

// Error taxonomy mirrored by the CLI exit codes:
// DomainError -> 2, ResourceError -> 3, SolverError / NumericError -> 4.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace adsvol
