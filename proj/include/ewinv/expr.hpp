#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "ewinv/number.hpp"
#include "ewinv/poly.hpp"

namespace ewinv {

/// Immutable canonical rational function num/den.
///
/// Canonical form: the denominator is 1 or a polynomial with more than one
/// term, no monomial factor and leading coefficient 1; gcd(num, den) = 1.
/// Monomial denominators are absorbed into the numerator as negative
/// exponents, so equality is structural.
class Expr {
 public:
  Expr();
  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(const mpq_class& q);  // NOLINT(google-explicit-constructor)
  Expr(Symbol s);  // NOLINT(google-explicit-constructor)
  explicit Expr(const Poly& p);
  /// Normalizes num/den; throws division_by_zero when den is zero.
  static Expr fraction(const Poly& num, const Poly& den);

  static Expr t();
  static Expr x();
  static Expr y();
  static Expr base(Base b);
  static Expr jet(Dependent d, int t, int x, int y);
  static Expr formal(const std::string& name, int order = 0);
  /// e^{q b}
  static Expr exp_of(Base b, Exp q = Exp(1));

  const Poly& num() const;
  const Poly& den() const;
  bool is_polynomial() const { return den().is_one(); }
  bool is_zero() const { return num().is_zero(); }
  bool is_constant() const { return is_polynomial() && num().is_constant(); }
  mpq_class constant_value() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  /// Integer powers of anything; fractional powers only of c*monomial with
  /// c^e rational (else non_representable).
  Expr pow(Exp e) const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  std::set<Symbol> symbols() const;
  bool depends_on(Symbol s) const;
  /// Highest jet order present, -1 when no jet symbols.
  int jet_order() const;

  std::string to_string() const;

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  explicit Expr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Derivation values on symbols as polynomials; nullptr means zero.
using SymbolDerivation = std::function<const Poly*(Symbol)>;

Expr derive(const Expr& e, const SymbolDerivation& ds);

/// Ordinary partial derivative. For a base variable b it also acts on the
/// exponential atom e^{b} and, for b = t, on formal functions of t.
Expr partial(const Expr& e, Symbol s);
Expr partial(const Expr& e, Base b);

using Bindings = std::map<Symbol, Expr>;

/// Simultaneous substitution. Throws zero_denominator when the image of the
/// denominator vanishes.
Expr substitute(const Expr& e, const Bindings& bindings);

using Valuation = std::function<Number(Symbol)>;

/// Evaluates at a point. Exponential atoms are evaluated from the value of
/// their base symbol. Throws unbound_symbol, pole, negative_base_power.
Number evaluate(const Expr& e, const Valuation& value);
Number evaluate(const Expr& e, const std::map<Symbol, Number>& values);

/// Coefficient of s^d in a polynomial Expr (used for field decomposition).
Expr coefficient(const Expr& e, Symbol s, Exp d);

}  // namespace ewinv
