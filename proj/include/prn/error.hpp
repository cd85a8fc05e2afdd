#pragma once

#include <stdexcept>
#include <string>

namespace prn {

/// Error categories. The CLI prints the category name on stderr and maps it
/// to an exit code, so scripts can dispatch on failures without parsing
/// free-form text.
enum class errc {
  duplicate_variable,
  disconnected,
  unknown_name,
  dangling_edge_index,
  unobserved_value_used,
  invalid_edge,
  zero_weight,
  unknown_variable_or_tag,
  unknown_variable,
  unknown_value,
  all_unobserved,
  zero_condition_mass,
  non_integral_recursion,
  enumeration_cap_exceeded,
  not_factorized,
  empty_joint,
  contradictory_evidence,
  negative_value,
  column_not_normalized,
  cap_exceeded,
  parse_error,
  invariant_violation,
  usage_error,
};

const char* category_name(errc code);

/// CLI exit code for a category: 1 usage, 2 parse/validation, 3 inference.
int exit_code(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(category_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }
  const char* category() const noexcept { return category_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace prn
