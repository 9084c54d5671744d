#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace ewinv {

/// Small rational exponent p/q with q > 0 and gcd(p,q) = 1.
class Exp {
 public:
  constexpr Exp() = default;
  Exp(std::int64_t num) : Exp(num, 1) {}  // NOLINT(google-explicit-constructor)
  Exp(std::int64_t num, std::int64_t den);

  std::int32_t num() const { return num_; }
  std::int32_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Exp operator-() const { return Exp(-std::int64_t(num_), den_); }
  friend Exp operator+(Exp a, Exp b);
  friend Exp operator-(Exp a, Exp b) { return a + (-b); }
  friend Exp operator*(Exp a, Exp b);
  friend Exp operator/(Exp a, Exp b);

  friend bool operator==(Exp a, Exp b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(Exp a, Exp b) {
    return std::int64_t(a.num_) * b.den_ <=> std::int64_t(b.num_) * a.den_;
  }

  mpq_class to_mpq() const { return mpq_class(num_, den_); }
  std::string to_string() const;

 private:
  std::int32_t num_ = 0;
  std::int32_t den_ = 1;
};

std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Canonical text for a rational: "3", "-2/5".
std::string rational_to_string(const mpq_class& q);

/// Parses "p" or "p/q" (optionally signed); throws syntax_error.
mpq_class parse_rational(const std::string& text);

/// Exact q-th root of a non-negative integer, if it exists.
bool exact_root(const mpz_class& value, unsigned long q, mpz_class& root);

/// Exact rational power base^e, if rational. Requires base > 0 when e is
/// not an integer; returns false when the result is irrational.
bool exact_power(const mpq_class& base, Exp e, mpq_class& out);

}  // namespace ewinv
