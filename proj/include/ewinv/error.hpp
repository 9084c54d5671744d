#pragma once

#include <stdexcept>
#include <string>

namespace ewinv {

/// Failure categories; each maps to a distinct CLI exit code.
enum class ErrorKind {
  division_by_zero,
  zero_denominator,
  unbound_symbol,
  pole,
  negative_base_power,
  non_representable,
  order_cap_exceeded,
  non_invertible_element,
  domain_violation,
  degenerate_metric,
  singular_locus,
  all_samples_singular,
  precision_mismatch,
  inconsistent_lift,
  syntax_error,
  unknown_identifier,
  unknown_id,
  invalid_argument,
  io_error,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ewinv
