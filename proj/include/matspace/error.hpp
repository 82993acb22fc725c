#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matspace {

enum class ErrorCode {
  not_prime,
  unsupported,
  division_by_zero,
  field_mismatch,
  infinite_field,
  shape_mismatch,
  singular,
  budget_exceeded,
  cap_exceeded,
  not_symmetric,
  char2_alternating_residual,
  zero_diagonal_entry,
  square_class_not_violated,
  no_invertible_solution,
  zero_vector,
  parse_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace matspace
