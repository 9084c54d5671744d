#include "ewinv/expr.hpp"

#include <ostream>
#include <unordered_map>

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

const Poly& one_poly() {
  static const Poly one{mpq_class(1)};
  return one;
}

// Rescales every exponent of s by factor[s] (to clear denominators) or
// back again.
Poly rescale(const Poly& p, const std::map<Symbol, std::int64_t>& factor, bool inverse) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const Term& t : p.terms()) {
    Monomial m = t.mono;
    for (Factor& f : m) {
      auto it = factor.find(f.sym);
      if (it == factor.end()) continue;
      f.exp = inverse ? f.exp / Exp(it->second) : f.exp * Exp(it->second);
    }
    out.push_back(Term{std::move(m), t.coef});
  }
  return Poly::from_sorted(std::move(out));
}

void collect_denominators(const Poly& p, std::map<Symbol, std::int64_t>& factor) {
  for (const Term& t : p.terms())
    for (const Factor& f : t.mono)
      if (!f.exp.is_integer()) {
        auto& l = factor[f.sym];
        l = lcm64(l == 0 ? 1 : l, f.exp.den());
      }
}

}  // namespace

Expr::Expr() : Expr(0L) {}

Expr::Expr(long v) : Expr(Poly(mpq_class(v))) {}

Expr::Expr(const mpq_class& q) : Expr(Poly(q)) {}

Expr::Expr(Symbol s) : Expr(Poly(s)) {}

Expr::Expr(const Poly& p) : rep_(std::make_shared<const Rep>(Rep{p, one_poly()})) {}

Expr Expr::fraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) fail(ErrorKind::division_by_zero, "division by the zero expression");
  if (num.is_zero()) return Expr();
  if (den.size() == 1) {
    const Term& d = den.leading();
    return Expr(num.times(monomial_inv(d.mono), 1 / d.coef));
  }
  Monomial md = den.min_monomial();
  Poly d0 = den.times(monomial_inv(md), 1);
  Poly n1 = num.times(monomial_inv(md), 1);
  Monomial mn = n1.min_monomial();
  Poly n0 = n1.times(monomial_inv(mn), 1);

  std::map<Symbol, std::int64_t> factor;
  collect_denominators(n0, factor);
  collect_denominators(d0, factor);
  if (!factor.empty()) {
    n0 = rescale(n0, factor, false);
    d0 = rescale(d0, factor, false);
  }
  Poly g = poly_gcd(n0, d0);
  if (!g.is_constant()) {
    auto qn = divide_exact(n0, g);
    auto qd = divide_exact(d0, g);
    if (!qn || !qd) fail(ErrorKind::invalid_argument, "internal: gcd does not divide");
    n0 = std::move(*qn);
    d0 = std::move(*qd);
  }
  if (!factor.empty()) {
    n0 = rescale(n0, factor, true);
    d0 = rescale(d0, factor, true);
  }
  Poly n = n0.times(mn, 1);
  if (d0.size() == 1) {
    const Term& d = d0.leading();
    return Expr(n.times(monomial_inv(d.mono), 1 / d.coef));
  }
  mpq_class lc = d0.leading().coef;
  if (lc != 1) {
    n = n.scaled(1 / lc);
    d0 = d0.scaled(1 / lc);
  }
  return Expr(std::make_shared<const Rep>(Rep{std::move(n), std::move(d0)}));
}

Expr Expr::t() { return Expr(Symbol::base(Base::t)); }
Expr Expr::x() { return Expr(Symbol::base(Base::x)); }
Expr Expr::y() { return Expr(Symbol::base(Base::y)); }
Expr Expr::base(Base b) { return Expr(Symbol::base(b)); }

Expr Expr::jet(Dependent d, int t, int x, int y) { return Expr(Symbol::jet(d, t, x, y)); }

Expr Expr::formal(const std::string& name, int order) { return Expr(Symbol::formal(name, order)); }

Expr Expr::exp_of(Base b, Exp q) { return Expr(Poly(Symbol::exp_of(b), q)); }

const Poly& Expr::num() const { return rep_->num; }
const Poly& Expr::den() const { return rep_->den; }

mpq_class Expr::constant_value() const {
  if (!is_constant()) fail(ErrorKind::invalid_argument, "expression is not constant: " + to_string());
  return num().constant_value();
}

Expr Expr::operator-() const {
  if (is_polynomial()) return Expr(-num());
  return Expr(std::make_shared<const Rep>(Rep{-num(), den()}));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_polynomial() && b.is_polynomial()) return Expr(a.num() + b.num());
  if (a.den() == b.den()) return Expr::fraction(a.num() + b.num(), a.den());
  if (b.is_polynomial()) return Expr::fraction(a.num() + b.num() * a.den(), a.den());
  if (a.is_polynomial()) return Expr::fraction(a.num() * b.den() + b.num(), b.den());
  return Expr::fraction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_polynomial() && b.is_polynomial()) return Expr(a.num() * b.num());
  return Expr::fraction(a.num() * b.num(), a.den() * b.den());
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) fail(ErrorKind::division_by_zero, "division by the zero expression");
  if (a.is_zero()) return Expr();
  if (b.is_polynomial() && b.num().size() == 1) {
    const Term& t = b.num().leading();
    if (a.is_polynomial()) return Expr(a.num().times(monomial_inv(t.mono), 1 / t.coef));
  }
  return Expr::fraction(a.num() * b.den(), a.den() * b.num());
}

Expr Expr::pow(Exp e) const {
  if (e.is_zero()) return Expr(1L);
  if (e.is_integer()) {
    unsigned n = unsigned(e.num() < 0 ? -std::int64_t(e.num()) : e.num());
    if (is_polynomial() && num().size() == 1) {
      const Term& t = num().leading();
      mpq_class c;
      exact_power(t.coef, e, c);
      return Expr(Poly::monomial(monomial_pow(t.mono, e), c));
    }
    if (e.sign() > 0) {
      if (is_polynomial()) return Expr(num().pow(n));
      return Expr(std::make_shared<const Rep>(Rep{num().pow(n), den().pow(n)}));
    }
    if (is_zero()) fail(ErrorKind::division_by_zero, "zero raised to a negative power");
    return fraction(den().pow(n), num().pow(n));
  }
  if (is_zero()) {
    if (e.sign() < 0) fail(ErrorKind::division_by_zero, "zero raised to a negative power");
    return Expr();
  }
  if (!is_polynomial() || num().size() != 1)
    fail(ErrorKind::non_representable,
         "fractional power " + e.to_string() + " of a non-monomial: " + to_string());
  const Term& t = num().leading();
  mpq_class c;
  if (t.coef < 0 || !exact_power(t.coef, e, c))
    fail(ErrorKind::non_representable,
         "coefficient " + rational_to_string(t.coef) + " has no rational power " + e.to_string());
  return Expr(Poly::monomial(monomial_pow(t.mono, e), c));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return true;
  return a.num() == b.num() && a.den() == b.den();
}

std::set<Symbol> Expr::symbols() const {
  std::set<Symbol> s;
  for (const Poly* p : {&num(), &den()})
    for (const Term& t : p->terms())
      for (const Factor& f : t.mono) s.insert(f.sym);
  return s;
}

bool Expr::depends_on(Symbol s) const { return num().contains(s) || den().contains(s); }

int Expr::jet_order() const {
  int order = -1;
  for (const Poly* p : {&num(), &den()})
    for (const Term& t : p->terms())
      for (const Factor& f : t.mono)
        if (f.sym.is_jet()) order = std::max(order, f.sym.jet_var().order());
  return order;
}

std::string Expr::to_string() const {
  if (is_polynomial()) return num().to_string();
  return "(" + num().to_string() + ")/(" + den().to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

Expr derive(const Expr& e, const SymbolDerivation& ds) {
  Poly dn = derive_poly(e.num(), ds);
  if (e.is_polynomial()) return Expr(dn);
  Poly dd = derive_poly(e.den(), ds);
  return Expr::fraction(dn * e.den() - e.num() * dd, e.den() * e.den());
}

Expr partial(const Expr& e, Symbol s) {
  if (s.is_base()) return partial(e, s.base_var());
  Poly one(mpq_class(1));
  return derive(e, [&](Symbol x) -> const Poly* { return x == s ? &one : nullptr; });
}

Expr partial(const Expr& e, Base b) {
  Poly one(mpq_class(1));
  std::unordered_map<Symbol, Poly> cache;
  Symbol bs = Symbol::base(b);
  Symbol es = Symbol::exp_of(b);
  return derive(e, [&](Symbol x) -> const Poly* {
    if (x == bs) return &one;
    if (x == es || (b == Base::t && x.is_formal())) {
      auto it = cache.find(x);
      if (it == cache.end())
        it = cache.emplace(x, Poly(x == es ? x : x.formal_derivative())).first;
      return &it->second;
    }
    return nullptr;
  });
}

namespace {

struct PowerKey {
  Symbol sym;
  Exp exp;
  bool operator==(const PowerKey&) const = default;
};

struct PowerKeyHash {
  std::size_t operator()(const PowerKey& k) const {
    return std::hash<std::uint32_t>{}(k.sym.id()) * 31U + std::size_t(k.exp.num()) * 7U +
           std::size_t(k.exp.den());
  }
};

void check_dependent_atoms(const Poly& p, const Bindings& b) {
  for (const Term& t : p.terms()) {
    for (const Factor& f : t.mono) {
      if (b.count(f.sym)) continue;
      Symbol base;
      if (f.sym.is_exp()) {
        base = Symbol::base(f.sym.base_var());
      } else if (f.sym.is_formal()) {
        base = Symbol::base(Base::t);
      } else {
        continue;
      }
      auto it = b.find(base);
      if (it != b.end() && it->second != Expr(base))
        fail(ErrorKind::non_representable,
             "cannot substitute " + base.to_string() + " inside " + f.sym.to_string());
    }
  }
}

Expr substitute_poly(const Poly& p, const Bindings& b) {
  check_dependent_atoms(p, b);
  bool fast = true;
  for (const Term& t : p.terms()) {
    for (const Factor& f : t.mono) {
      auto it = b.find(f.sym);
      if (it == b.end()) continue;
      const Expr& v = it->second;
      bool single = v.is_polynomial() && v.num().size() <= 1;
      if (!(v.is_polynomial() && ((f.exp.is_integer() && f.exp.sign() > 0) || single))) fast = false;
    }
    if (!fast) break;
  }
  std::unordered_map<PowerKey, Expr, PowerKeyHash> powers;
  auto power = [&](Symbol s, Exp e) -> const Expr& {
    PowerKey k{s, e};
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, b.at(s).pow(e)).first;
    return it->second;
  };
  if (fast) {
    std::vector<Term> out;
    for (const Term& t : p.terms()) {
      Monomial rest;
      Poly prod(t.coef);
      for (const Factor& f : t.mono) {
        if (b.count(f.sym)) {
          prod = prod * power(f.sym, f.exp).num();
        } else {
          rest.push_back(f);
        }
      }
      if (prod.is_zero()) continue;
      for (const Term& q : prod.terms()) out.push_back(Term{monomial_mul(q.mono, rest), q.coef});
    }
    return Expr(Poly::from_terms(std::move(out)));
  }
  // Accumulate over a common denominator; one normalization at the end.
  Poly num, den(mpq_class(1));
  for (const Term& t : p.terms()) {
    Monomial rest;
    Poly n(t.coef), d(mpq_class(1));
    for (const Factor& f : t.mono) {
      if (b.count(f.sym)) {
        const Expr& v = power(f.sym, f.exp);
        n = n * v.num();
        if (!v.is_polynomial()) d = d * v.den();
      } else {
        rest.push_back(f);
      }
    }
    if (n.is_zero()) continue;
    n = n.times(rest, 1);
    if (d == den) {
      num = num + n;
    } else if (auto q = divide_exact(den, d)) {
      num = num + n * *q;
    } else if (auto q2 = divide_exact(d, den)) {
      num = num * *q2 + n;
      den = d;
    } else {
      num = num * d + n * den;
      den = den * d;
    }
  }
  return Expr::fraction(num, den);
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  Expr n = substitute_poly(e.num(), bindings);
  if (e.is_polynomial()) return n;
  Expr d = substitute_poly(e.den(), bindings);
  if (d.is_zero())
    fail(ErrorKind::zero_denominator, "substitution makes the denominator vanish");
  return n / d;
}

namespace {

Number evaluate_poly(const Poly& p, const Valuation& value) {
  Number sum(0L);
  for (const Term& t : p.terms()) {
    Number prod(t.coef);
    for (const Factor& f : t.mono) {
      if (f.sym.is_exp()) {
        Number v = value(Symbol::base(f.sym.base_var()));
        prod = prod * (v * Number(f.exp.to_mpq())).exp();
      } else {
        prod = prod * value(f.sym).pow(f.exp);
      }
    }
    sum = sum + prod;
  }
  return sum;
}

}  // namespace

Number evaluate(const Expr& e, const Valuation& value) {
  Number n = evaluate_poly(e.num(), value);
  if (e.is_polynomial()) return n;
  Number d = evaluate_poly(e.den(), value);
  if (d.is_zero()) fail(ErrorKind::pole, "pole at the evaluation point: " + e.to_string());
  return n / d;
}

Number evaluate(const Expr& e, const std::map<Symbol, Number>& values) {
  return evaluate(e, [&](Symbol s) -> Number {
    auto it = values.find(s);
    if (it == values.end()) fail(ErrorKind::unbound_symbol, "unbound symbol " + s.to_string());
    return it->second;
  });
}

Expr coefficient(const Expr& e, Symbol s, Exp d) {
  if (!e.is_polynomial())
    fail(ErrorKind::invalid_argument, "coefficient of a non-polynomial expression");
  return Expr(coefficient_of(e.num(), s, d));
}

}  // namespace ewinv
