#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace morop {

/// Runtime error carrying a stable machine-readable code alongside the
/// human-readable message. Codes in use: "config-error", "schema-mismatch",
/// "empty-archive", "dimension-mismatch", "zero-range-objective",
/// "model-failure", "bemt-no-convergence", "polar-out-of-range",
/// "no-feasible-solution".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace morop
