#include "ewinv/rational.hpp"

#include <limits>
#include <numeric>

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int32_t>::max();

}  // namespace

Exp::Exp(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::invalid_argument, "exponent with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < -kMax || den > kMax)
    fail(ErrorKind::non_representable, "exponent overflow");
  num_ = std::int32_t(num);
  den_ = std::int32_t(den);
}

Exp operator+(Exp a, Exp b) {
  if (a.den_ == b.den_) return Exp(std::int64_t(a.num_) + b.num_, a.den_);
  return Exp(std::int64_t(a.num_) * b.den_ + std::int64_t(b.num_) * a.den_,
             std::int64_t(a.den_) * b.den_);
}

Exp operator*(Exp a, Exp b) {
  return Exp(std::int64_t(a.num_) * b.num_, std::int64_t(a.den_) * b.den_);
}

Exp operator/(Exp a, Exp b) {
  if (b.num_ == 0) fail(ErrorKind::division_by_zero, "exponent division by zero");
  return Exp(std::int64_t(a.num_) * b.den_, std::int64_t(a.den_) * b.num_);
}

std::string Exp::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  std::int64_t l = std::lcm(a, b);
  if (l > kMax) fail(ErrorKind::non_representable, "exponent denominator overflow");
  return l;
}

std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || q.set_str(s, 10) != 0)
    fail(ErrorKind::syntax_error, "invalid rational literal '" + text + "'");
  if (q.get_den() == 0) fail(ErrorKind::division_by_zero, "rational literal with zero denominator");
  q.canonicalize();
  return q;
}

bool exact_root(const mpz_class& value, unsigned long q, mpz_class& root) {
  if (value < 0) return false;
  return mpz_root(root.get_mpz_t(), value.get_mpz_t(), q) != 0;
}

bool exact_power(const mpq_class& base, Exp e, mpq_class& out) {
  if (base == 0) {
    if (e.sign() <= 0)
      fail(ErrorKind::pole, "zero raised to a non-positive power");
    out = 0;
    return true;
  }
  mpq_class b = base;
  if (e.num() < 0) b = 1 / b;
  unsigned long p = static_cast<unsigned long>(e.num() < 0 ? -std::int64_t(e.num()) : e.num());
  if (!e.is_integer()) {
    if (b < 0)
      fail(ErrorKind::negative_base_power,
           "negative base " + rational_to_string(base) + " raised to " + e.to_string());
    mpz_class rn, rd;
    if (!exact_root(b.get_num(), static_cast<unsigned long>(e.den()), rn)) return false;
    if (!exact_root(b.get_den(), static_cast<unsigned long>(e.den()), rd)) return false;
    b = mpq_class(rn, rd);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), p);
  mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), p);
  out = mpq_class(n, d);
  out.canonicalize();
  return true;
}

}  // namespace ewinv
