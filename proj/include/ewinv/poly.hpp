#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "ewinv/rational.hpp"
#include "ewinv/symbol.hpp"

namespace ewinv {

struct Factor {
  Symbol sym;
  Exp exp;

  bool operator==(const Factor&) const = default;
};

/// Power product with nonzero exponents, sorted by symbol id.
using Monomial = boost::container::small_vector<Factor, 4>;

/// Lexicographic order on exponent vectors (lower symbol id = higher
/// priority). It is a group order, so it is compatible with products even
/// with negative and fractional exponents.
int monomial_cmp(const Monomial& a, const Monomial& b);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
Monomial monomial_inv(const Monomial& a);
Monomial monomial_pow(const Monomial& a, Exp e);
Exp exponent_of(const Monomial& m, Symbol s);
Monomial with_exponent(const Monomial& m, Symbol s, Exp e);
std::size_t monomial_hash(const Monomial& m);

struct Term {
  Monomial mono;
  mpq_class coef;
};

/// Sparse Laurent polynomial with rational coefficients; terms are sorted by
/// decreasing monomial and have nonzero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  explicit Poly(Symbol s, Exp e = Exp(1));
  static Poly monomial(const Monomial& m, const mpq_class& c);
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(std::vector<Term> terms);
  /// Terms already strictly decreasing with nonzero coefficients.
  static Poly from_sorted(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Constant term value; precondition is_constant().
  mpq_class constant_value() const;
  const Term& leading() const { return terms_.front(); }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& c) const;
  Poly times(const Monomial& m, const mpq_class& c) const;
  Poly pow(unsigned n) const;

  friend bool operator==(const Poly& a, const Poly& b);

  /// Per-symbol minimum exponent over all terms (absent counts as 0).
  Monomial min_monomial() const;
  std::vector<Symbol> symbols() const;
  bool contains(Symbol s) const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Applies a derivation given by its values on symbols. `ds` returns
/// nullptr for symbols annihilated by the derivation.
template <class F>
Poly derive_poly(const Poly& p, F&& ds);

/// Exact division of polynomials with non-negative exponents; nullopt when
/// b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Monic gcd of polynomials with non-negative integer exponents.
Poly poly_gcd(const Poly& a, const Poly& b);

int integer_degree(const Poly& p, Symbol s);
/// Coefficient of s^d as a polynomial free of s.
Poly coefficient_of(const Poly& p, Symbol s, Exp d);

// ---------------------------------------------------------------------------

template <class F>
Poly derive_poly(const Poly& p, F&& ds) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const Poly* d = ds(t.mono[i].sym);
      if (d == nullptr || d->is_zero()) continue;
      Monomial base = t.mono;
      Exp e = base[i].exp;
      Exp e1 = e - Exp(1);
      if (e1.is_zero()) {
        base.erase(base.begin() + std::ptrdiff_t(i));
      } else {
        base[i].exp = e1;
      }
      mpq_class c = t.coef * e.to_mpq();
      for (const Term& dt : d->terms())
        out.push_back(Term{monomial_mul(base, dt.mono), c * dt.coef});
    }
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace ewinv
