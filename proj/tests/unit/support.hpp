#pragma once

#include <random>

#include "ewinv/expr.hpp"

namespace ewinv::test {

/// Small random polynomial in t, x, y, u_x, v and f(t) with rational
/// coefficients and occasional fractional powers of y.
inline Expr random_expr(std::mt19937& rng) {
  static const Symbol pool[] = {Symbol::base(Base::t), Symbol::base(Base::x), Symbol::base(Base::y),
                                Symbol::jet(Dependent::u, 0, 1, 0), Symbol::jet(Dependent::v, 0, 0, 0),
                                Symbol::formal("f")};
  std::uniform_int_distribution<int> nterms(0, 3), coef(-4, 4), den(1, 3), pick(0, 5), pw(0, 2);
  Expr e;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Expr term(mpq_class(coef(rng), den(rng)));
    int factors = pw(rng);
    for (int k = 0; k < factors; ++k) {
      Symbol s = pool[pick(rng)];
      Exp p(1 + pw(rng));
      if (s == pool[2] && pw(rng) == 0) p = Exp(1, 3);
      term = term * Expr(Poly(s, p));
    }
    e = e + term;
  }
  return e;
}

/// Random polynomial in jets of u, v up to `max_order` and the base
/// variables, including principal coordinates.
inline Expr random_jet_expr(std::mt19937& rng, int max_order) {
  std::uniform_int_distribution<int> nterms(1, 3), coef(-3, 3), deg(0, max_order), which(0, 5), nf(1, 2);
  Expr e;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Expr term(mpq_class(coef(rng)));
    int factors = nf(rng);
    for (int k = 0; k < factors; ++k) {
      int w = which(rng);
      if (w == 5) {
        term = term * Expr::base(kBases[std::size_t(rng() % 3)]);
        continue;
      }
      int order = deg(rng);
      int a = int(rng() % unsigned(order + 1));
      int b = int(rng() % unsigned(order - a + 1));
      int c = order - a - b;
      term = term * Expr::jet(w % 2 == 0 ? Dependent::u : Dependent::v, a, b, c);
    }
    e = e + term;
  }
  return e;
}

}  // namespace ewinv::test
