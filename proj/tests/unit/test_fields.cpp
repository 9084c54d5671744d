#include <random>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/fields.hpp"
#include "support.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

PointField F(const char* t, const char* x, const char* y, const char* u, const char* v) {
  return {{P(t), P(x), P(y)}, P(u), P(v)};
}

PointField random_field(std::mt19937& rng) {
  static const char* pool[] = {"0", "1", "x", "y", "t*u", "x*y", "u", "v", "y^2", "f(t)", "u*y", "t"};
  auto pick = [&] { return P(pool[rng() % 12]); };
  return {{pick(), pick(), pick()}, pick(), pick()};
}

}  // namespace

TEST_CASE("generating sections") {
  GeneratingSection g = generating_section(F("0", "f(t)", "0", "0", "f'(t)"));
  CHECK(g.phi_u == P("-f(t)*u_x"));
  CHECK(g.phi_v == P("f'(t) - f(t)*v_x"));
  g = generating_section(F("0", "1", "0", "0", "0"));
  CHECK(g.phi_u == P("-u_x"));
  g = generating_section(F("0", "0", "0", "1", "0"));
  CHECK(g.phi_u == P("1"));
  CHECK(g.phi_v.is_zero());
}

TEST_CASE("prolongation coefficients") {
  Prolongation dx(F("0", "1", "0", "0", "0"), 4, false);
  CHECK(dx.coefficient(JetVar{Dependent::u, MultiIndex{0, 2, 1}}).is_zero());
  Prolongation du(F("0", "0", "0", "1", "0"), 4, false);
  CHECK(du.coefficient(JetVar{Dependent::u, MultiIndex{}}) == P("1"));
  CHECK(du.coefficient(JetVar{Dependent::u, MultiIndex{0, 1, 0}}).is_zero());
  // Scaling x d_x: u_x -> -u_x.
  Prolongation sx(F("0", "x", "0", "0", "0"), 4, false);
  CHECK(sx.coefficient(JetVar{Dependent::u, MultiIndex{0, 1, 0}}) == P("-u_x"));
  CHECK(sx.coefficient(JetVar{Dependent::v, MultiIndex{0, 2, 1}}) == P("-2*v_xxy"));
  CHECK_THROWS_AS(sx.coefficient(JetVar{Dependent::u, MultiIndex{0, 5, 0}}), Error);
  CHECK_THROWS_AS(Prolongation(F("0", "u_x", "0", "0", "0")), Error);
}

TEST_CASE("recursive and direct prolongation agree") {
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    PointField x = random_field(rng);
    Prolongation pr(x, 4, false);
    for (const JetVar& j : internal_jets(3))
      REQUIRE(pr.coefficient(j) == prolongation_coefficient_direct(x, j, 3));
    for (const char* s : {"u_tx", "v_txy", "u_ttx"}) {
      JetVar j = P(s).symbols().begin()->jet_var();
      REQUIRE(pr.coefficient(j) == prolongation_coefficient_direct(x, j, 3));
    }
  }
}

TEST_CASE("brackets") {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    PointField a = random_field(rng), b = random_field(rng), c = random_field(rng);
    REQUIRE(lie_bracket(a, b) == PointField{} - lie_bracket(b, a));
    PointField jac = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                     lie_bracket(c, lie_bracket(a, b));
    REQUIRE(jac.is_zero());
    // Prolongation is a Lie algebra morphism on functions of the jets.
    Expr e = test::random_jet_expr(rng, 2);
    Expr lhs = lie_derivative(lie_bracket(a, b), e, 2, false);
    Expr rhs = lie_derivative(a, lie_derivative(b, e, 3, false), 3, false) -
               lie_derivative(b, lie_derivative(a, e, 3, false), 3, false);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("lie derivative") {
  CHECK(lie_derivative(F("0", "x", "0", "0", "0"), P("u_x^2*x"), 1) == P("-x*u_x^2"));
  CHECK(lie_derivative(F("1", "0", "0", "0", "0"), P("t*u_y"), 1) == P("u_y"));
  CHECK_THROWS_AS(lie_derivative(F("1", "0", "0", "0", "0"), P("u_xxx"), 2), Error);
}
