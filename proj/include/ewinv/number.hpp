#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include "ewinv/rational.hpp"

namespace ewinv {

using Float = boost::multiprecision::mpfr_float;

/// Decimal digits used for inexact evaluation. Read once from
/// EWINV_PRECISION (default 50).
unsigned working_precision();
/// Overrides the working precision (digits) for the current thread.
void set_working_precision(unsigned digits);

/// Exact rational, or a high-precision float when an irrational value
/// (fractional power, exponential) forced it.
class Number {
 public:
  Number() = default;
  Number(long v) : exact_(true), q_(v) {}  // NOLINT(google-explicit-constructor)
  Number(const mpq_class& q) : exact_(true), q_(q) {}  // NOLINT(google-explicit-constructor)
  static Number from_float(const Float& f);

  bool is_exact() const { return exact_; }
  const mpq_class& rational() const { return q_; }
  Float to_float() const;
  double to_double() const;
  bool is_zero() const;
  int sign() const;

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  /// Throws pole on division by an exact zero.
  friend Number operator/(const Number& a, const Number& b);
  Number pow(Exp e) const;
  /// e^{this}
  Number exp() const;
  Number abs() const;

  /// "p/q" when exact, otherwise a decimal string with the working digits.
  std::string to_string() const;
  /// Parses "p/q", an integer, or a decimal (which yields a float).
  static Number parse(const std::string& text);

 private:
  bool exact_ = true;
  mpq_class q_{0};
  Float f_;
};

}  // namespace ewinv
