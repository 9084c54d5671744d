#include "ewinv/number.hpp"

#include <cstdlib>
#include <sstream>

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

unsigned initial_precision() {
  const char* env = std::getenv("EWINV_PRECISION");
  if (env != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 10 && v <= 10000) return unsigned(v);
  }
  return 50;
}

thread_local unsigned g_digits = initial_precision();

Float make_float(const mpq_class& q) {
  Float::default_precision(working_precision());
  Float n(q.get_num().get_mpz_t());
  Float d(q.get_den().get_mpz_t());
  return n / d;
}

}  // namespace

unsigned working_precision() { return g_digits; }

void set_working_precision(unsigned digits) { g_digits = digits; }

Number Number::from_float(const Float& f) {
  Number n;
  n.exact_ = false;
  n.f_ = f;
  return n;
}

Float Number::to_float() const { return exact_ ? make_float(q_) : f_; }

double Number::to_double() const { return exact_ ? q_.get_d() : f_.convert_to<double>(); }

bool Number::is_zero() const { return exact_ ? q_ == 0 : f_ == 0; }

int Number::sign() const {
  if (exact_) return sgn(q_);
  return f_ > 0 ? 1 : (f_ < 0 ? -1 : 0);
}

Number Number::operator-() const {
  if (exact_) return Number(mpq_class(-q_));
  return from_float(Float(-f_));
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(mpq_class(a.q_ + b.q_));
  return Number::from_float(Float(a.to_float() + b.to_float()));
}

Number operator-(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(mpq_class(a.q_ - b.q_));
  return Number::from_float(Float(a.to_float() - b.to_float()));
}

Number operator*(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) return Number(mpq_class(a.q_ * b.q_));
  if ((a.exact_ && a.q_ == 0) || (b.exact_ && b.q_ == 0)) return Number(0L);
  return Number::from_float(Float(a.to_float() * b.to_float()));
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_zero()) fail(ErrorKind::pole, "division by zero during evaluation");
  if (a.exact_ && b.exact_) return Number(mpq_class(a.q_ / b.q_));
  return Number::from_float(Float(a.to_float() / b.to_float()));
}

Number Number::pow(Exp e) const {
  if (exact_) {
    mpq_class r;
    if (exact_power(q_, e, r)) return Number(r);
    // Irrational: base is positive here.
    return from_float(Float(boost::multiprecision::pow(make_float(q_), make_float(e.to_mpq()))));
  }
  if (e.is_integer()) {
    if (e.sign() < 0 && f_ == 0) fail(ErrorKind::pole, "zero raised to a negative power");
    Float r = boost::multiprecision::pow(f_, e.num());
    return from_float(r);
  }
  if (f_ < 0)
    fail(ErrorKind::negative_base_power, "negative base raised to " + e.to_string());
  if (f_ == 0) {
    if (e.sign() <= 0) fail(ErrorKind::pole, "zero raised to a non-positive power");
    return Number(0L);
  }
  return from_float(Float(boost::multiprecision::pow(f_, make_float(e.to_mpq()))));
}

Number Number::exp() const {
  if (exact_ && q_ == 0) return Number(1L);
  return from_float(Float(boost::multiprecision::exp(to_float())));
}

Number Number::abs() const { return sign() < 0 ? -*this : *this; }

std::string Number::to_string() const {
  if (exact_) return rational_to_string(q_);
  std::ostringstream os;
  os.precision(int(working_precision()));
  os << f_;
  return os.str();
}

Number Number::parse(const std::string& text) {
  if (text.find_first_of(".eE") == std::string::npos) return Number(parse_rational(text));
  Float::default_precision(working_precision());
  try {
    return from_float(Float(text));
  } catch (const std::exception&) {
    fail(ErrorKind::syntax_error, "invalid number '" + text + "'");
  }
}

}  // namespace ewinv
