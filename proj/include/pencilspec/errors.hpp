#pragma once

#include <stdexcept>
#include <string>

namespace pencilspec {

// Every failure mode the library reports. The CLI maps these onto its
// documented exit codes, so additions here need a mapping there as well.
enum class ErrorCode {
  dimension_mismatch,
  index_out_of_range,
  invalid_argument,
  non_symmetric,
  singular_matrix,
  degenerate_eigenvalue,
  convergence_failure,
  singular_mass,
  non_commuting,
  shared_basis_violation,
  real_modes,
  odd_length,
  unpaired_value,
  real_value,
  duplicate_eigenvalue,
  not_orthogonal,
  non_positive_mass,
  no_matching,
  unsupported_order,
  parse_error,
  io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pencilspec
