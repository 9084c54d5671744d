#include <random>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/jet.hpp"
#include "support.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

bool has_principal(const Expr& e) {
  for (Symbol s : e.symbols())
    if (s.is_jet() && s.jet_var().is_principal()) return true;
  return false;
}

}  // namespace

TEST_CASE("total derivatives") {
  CHECK(total_derivative(P("u"), Base::x) == P("u_x"));
  CHECK(total_derivative(P("u_x*v"), Base::y) == P("u_xy*v + u_x*v_y"));
  CHECK(total_derivative(P("f(t)*exp(2*t) + x"), Base::t) == P("f'(t)*exp(2*t) + 2*f(t)*exp(2*t)"));
  CHECK(ms_f1() == P("u_tx + u_x*u_y + u*u_xy + v_x*u_x + v*u_xx - u_yy"));
  CHECK(ms_f2() == P("v_tx + v_x^2 + v*v_xx - u_x*v_y - u*v_xy - v_yy + 2*u_y*v_x + 2*u*v_xy"));
  CHECK_THROWS_AS(total_derivative(P("u_xxyy"), Base::t, 4), Error);
}

TEST_CASE("principal solve") {
  const auto& ps = principal_solve();
  CHECK(ps.r_u == P("u_yy - u_x*u_y - u*u_xy - v_x*u_x - v*u_xx"));
  CHECK(ps.r_v == P("v_yy - v_x^2 - v*v_xx + u_x*v_y - u*v_xy - 2*u_y*v_x"));
  CHECK(substitute(ms_f1(), {{Symbol::jet(Dependent::u, 1, 1, 0), ps.r_u}}).is_zero());
  CHECK(substitute(ms_f2(), {{Symbol::jet(Dependent::v, 1, 1, 0), ps.r_v}}).is_zero());
}

TEST_CASE("reduction on the equation") {
  CHECK(reduce_on_equation(P("u_yy")) == P("u_yy"));
  CHECK(reduce_on_equation(total_derivative(ms_f1(), Base::y)).is_zero());
  CHECK(reduce_on_equation(total_derivative(ms_f2(), Base::t)).is_zero());
  Expr dy = reduce_on_equation(total_derivative(principal_solve().r_u, Base::y));
  CHECK(reduce_on_equation(P("u_txy")) == dy);
  CHECK_FALSE(has_principal(dy));
  for (const JetVar& j : internal_jets(4)) CHECK_FALSE(j.is_principal());
  // Every prolonged equation of order <= 4 vanishes.
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b + a <= 2; ++b)
      for (int c = 0; a + b + c <= 2; ++c) {
        MultiIndex s{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)};
        REQUIRE(reduce_on_equation(total_derivative(ms_f1(), s)).is_zero());
        REQUIRE(reduce_on_equation(total_derivative(ms_f2(), s)).is_zero());
      }
  CHECK_THROWS_AS(reduce_on_equation(P("u_x5")), Error);
}

TEST_CASE("dimensions") {
  Dims d0 = dims(0), d1 = dims(1), d2 = dims(2);
  CHECK(d0.dim_jet == 5);
  CHECK(d0.dim_equation == 5);
  CHECK(d0.n_internal == 1);
  CHECK(d1.dim_jet == 11);
  CHECK(d1.dim_equation == 11);
  CHECK(d1.n_internal == 4);
  CHECK(d2.dim_jet == 23);
  CHECK(d2.dim_equation == 21);
  CHECK(d2.n_internal == 9);
  for (int k = 2; k <= 8; ++k) {
    long equations = 2 * ((k + 1) * k * (k - 1) / 6);
    CHECK(dims(k).dim_equation == dims(k).dim_jet - equations);
    CHECK(long(internal_jets(k).size()) == 2 * dims(k).n_internal);
  }
}

TEST_CASE("total derivatives commute and reduction is compatible") {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    Expr e = test::random_jet_expr(rng, 2);
    for (Base a : kBases)
      for (Base b : kBases)
        REQUIRE(total_derivative(total_derivative(e, a), b) == total_derivative(total_derivative(e, b), a));
    Expr re = reduce_on_equation(e);
    REQUIRE(reduce_on_equation(re) == re);
    for (Base a : kBases)
      REQUIRE(reduce_on_equation(total_derivative(re, a)) == reduce_on_equation(total_derivative(e, a)));
    Expr f = test::random_jet_expr(rng, 3);
    REQUIRE(reduce_on_equation(e * f) == reduce_on_equation(re * reduce_on_equation(f)));
  }
}
