#include <random>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/expr.hpp"
#include "support.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

}  // namespace

TEST_CASE("arith cancels and reduces") {
  CHECK((P("u_x + v_x") - P("v_x")) == P("u_x"));
  CHECK(P("(u_x^2 - u_xy^2)/(u_x - u_xy)") == P("u_x + u_xy"));
  CHECK(P("y^(2/3)") * P("y^(1/3)") == P("y"));
  CHECK(P("(y - 1)/(y^(1/3) - 1)") == P("y^(2/3) + y^(1/3) + 1"));
  CHECK(P("1/(x+1) + 1/(x-1)") == P("2*x/(x^2-1)"));
  CHECK((P("u_x/(u_x+v)") * P("(u_x+v)/u_x")) == Expr(1L));
  CHECK_THROWS_AS(P("x") / Expr(), Error);
}

TEST_CASE("canonical denominators") {
  Expr e = P("(2*x + 2)/(4*x^2 + 4*y)");
  CHECK(e.den().leading().coef == 1);
  CHECK(e == P("(x+1)/(2*x^2 + 2*y)"));
  // Monomial denominators become negative exponents.
  CHECK(P("u_x/u_xx^2").is_polynomial());
  CHECK(P("x^2*y/(x*y^3)") == P("x*y^(-2)"));
}

TEST_CASE("partial derivatives") {
  CHECK(partial(P("u_x*v"), Symbol::jet(Dependent::v, 0, 0, 0)) == P("u_x"));
  CHECK(partial(P("a(t)*x"), Base::t) == P("a'(t)*x"));
  CHECK(partial(P("y^(2/3)"), Base::y) == P("2/3*y^(-1/3)"));
  CHECK(partial(P("exp(3*y)"), Base::y) == P("3*exp(3*y)"));
  CHECK(partial(P("1/(1+x^2)"), Base::x) == P("-2*x/(1+x^2)^2"));
}

TEST_CASE("substitution") {
  Symbol ux = Symbol::jet(Dependent::u, 0, 1, 0);
  CHECK(substitute(P("u_x^2"), {{ux, P("1+y")}}) == P("1 + 2*y + y^2"));
  CHECK(substitute(P("x/(x-y)"), {{Symbol::base(Base::x), P("2*y")}}) == Expr(2L));
  CHECK_THROWS_AS(substitute(P("1/(x-y)"), {{Symbol::base(Base::x), P("y")}}), Error);
  CHECK(substitute(P("y^(2/3)"), {{Symbol::base(Base::y), P("8*y")}}) == P("4*y^(2/3)"));
  CHECK_THROWS_AS(substitute(P("y^(2/3)"), {{Symbol::base(Base::y), P("2*y")}}), Error);
  CHECK_THROWS_AS(substitute(P("exp(y)"), {{Symbol::base(Base::y), P("2*y")}}), Error);
}

TEST_CASE("evaluation") {
  std::map<Symbol, Number> pt{{Symbol::jet(Dependent::u, 0, 1, 0), Number(2L)},
                              {Symbol::jet(Dependent::u, 0, 2, 0), Number(4L)}};
  CHECK(evaluate(P("u_x/u_xx"), pt).rational() == mpq_class(1, 2));
  CHECK(evaluate(P("y^(2/3)"), {{Symbol::base(Base::y), Number(mpq_class(8, 27))}}).rational() ==
        mpq_class(4, 9));
  Number r = evaluate(P("y^(1/2)"), {{Symbol::base(Base::y), Number(2L)}});
  CHECK_FALSE(r.is_exact());
  CHECK(r.to_double() == doctest::Approx(1.41421356237));
  CHECK_THROWS_AS(evaluate(P("1/(x-1)"), {{Symbol::base(Base::x), Number(1L)}}), Error);
  CHECK_THROWS_AS(evaluate(P("y^(1/3)"), {{Symbol::base(Base::y), Number(-8L)}}), Error);
  CHECK_THROWS_AS(evaluate(P("x + y"), {{Symbol::base(Base::x), Number(1L)}}), Error);
  Number e = evaluate(P("exp(-y)"), {{Symbol::base(Base::y), Number(1L)}});
  CHECK(e.to_double() == doctest::Approx(0.36787944117));
}

TEST_CASE("dsl parsing and printing") {
  CHECK(P("u_t3x2") == P("u_tttxx"));
  CHECK(P("u_t3x2").to_string() == "u_tttxx");
  CHECK(P("u_x4").to_string() == "u_x4");
  CHECK(P("f''(t)").to_string() == "f''(t)");
  CHECK_THROWS_AS(P("q + 1"), Error);
  CHECK_THROWS_AS(P("x +"), Error);
  auto s = parse_solution_text("u = x + exp(y); v = 0");
  CHECK(s.u == P("x + exp(y)"));
  CHECK(s.v.is_zero());
  auto s2 = parse_solution_text("u = y^(2/3) - (10/3)*x*y^(-1);\nv = 2/5*x*y^(-1/3)");
  CHECK(s2.u == P("y^(2/3) - 10/3*x/y"));
  try {
    parse_solution_text("u = ; v = 0");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::syntax_error);
    CHECK(std::string(e.what()).rfind("1:5", 0) == 0);
  }
  CHECK_THROWS_AS(parse_solution_text("u = u_x; v = 0"), Error);
  auto s3 = parse_solution_text("u = x\nv = y");
  CHECK(s3.v == P("y"));
  try {
    parse_solution_text("u =\nv = 0");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::syntax_error);
  }
}

TEST_CASE("random ring axioms") {
  std::mt19937 rng(20260101);
  for (int i = 0; i < 1000; ++i) {
    Expr a = test::random_expr(rng), b = test::random_expr(rng), c = test::random_expr(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a - a == Expr());
    if (!b.is_zero()) REQUIRE((a / b) * b == a);
  }
}

TEST_CASE("parse of printed form is identity") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Expr d = test::random_expr(rng) + Expr(3L);
    if (d.is_zero()) continue;
    Expr a = test::random_expr(rng) / d;
    REQUIRE(parse_expr(a.to_string()) == a);
  }
}

TEST_CASE("partials commute and evaluation is a homomorphism") {
  std::mt19937 rng(11);
  std::vector<Symbol> syms{Symbol::base(Base::t), Symbol::base(Base::x), Symbol::base(Base::y),
                           Symbol::jet(Dependent::u, 0, 1, 0), Symbol::jet(Dependent::v, 0, 0, 0)};
  for (int i = 0; i < 100; ++i) {
    Expr d = test::random_expr(rng) + Expr(5L);
    if (d.is_zero()) continue;
    Expr a = test::random_expr(rng) / d;
    for (Symbol s1 : syms)
      for (Symbol s2 : syms) REQUIRE(partial(partial(a, s1), s2) == partial(partial(a, s2), s1));
  }
  std::map<Symbol, Number> pt;
  for (Symbol s : syms) pt[s] = Number(mpq_class(int(rng() % 7) + 1, 3));
  pt[Symbol::formal("f")] = Number(mpq_class(2, 5));
  pt[Symbol::base(Base::y)] = Number(mpq_class(8, 27));
  for (int i = 0; i < 200; ++i) {
    Expr a = test::random_expr(rng), b = test::random_expr(rng);
    Number va = evaluate(a, pt), vb = evaluate(b, pt);
    REQUIRE(va.is_exact());
    REQUIRE(evaluate(a * b, pt).rational() == (va * vb).rational());
    REQUIRE(evaluate(a + b, pt).rational() == (va + vb).rational());
  }
}
