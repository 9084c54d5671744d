#include <random>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/invariants.hpp"
#include "ewinv/solution.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

Number at(const Expr& e, std::map<std::string, mpq_class> values) {
  std::map<Symbol, Number> m;
  for (const auto& [k, v] : values) m[*P(k).symbols().begin()] = Number(v);
  return evaluate(e, m);
}

// A random on-equation point away from u_x = 0 and u_xx = 0.
JetPoint regular_point(std::mt19937& rng, int k) {
  JetPoint p = random_jet_point(k, rng);
  return p;
}

}  // namespace

TEST_CASE("invariant formulas") {
  CHECK(at(invariant(1), {{"u_xy", 0}, {"v_xx", 0}, {"u_x", 1}}).rational() == 0);
  CHECK(substitute(invariant(1), {{*P("u_xy").symbols().begin(), Expr(1L)},
                                  {*P("v_xx").symbols().begin(), Expr(1L)},
                                  {*P("u_x").symbols().begin(), Expr(1L)}}) == Expr(2L));
  CHECK(at(structure_K(1), {{"u_x", 1}, {"u_xxx", 3}, {"u_xx", 1}}).rational() == 0);
  CHECK(substitute(structure_K(2), {{*P("u_xy").symbols().begin(), Expr()},
                                    {*P("u_xxy").symbols().begin(), Expr()}})
            .is_zero());
  for (int i = 1; i <= 3; ++i) CHECK(invariant(i).jet_order() == 2);
  for (int i = 1; i <= 4; ++i) CHECK(structure_K(i).jet_order() == 3);
  CHECK_THROWS_AS(invariant(4), Error);
}

TEST_CASE("derivations") {
  CHECK(apply_derivation(1, P("u_x")) == P("u_x"));
  CHECK(apply_derivation(2, P("u")) == P("(u_xy/u_xx*u_x - u_y)/u_x"));
  CHECK(apply_derivation(3, P("x")) == P("(v_x*u_x + v*u_xx + u_yy)/u_x^3"));
  CHECK(basic_invariants().size() == 12);
  CHECK(basic_invariant_names()[5] == "I13");
}

TEST_CASE("sl2 family invariants") {
  SolutionText st = parse_solution_text(
      "u = y^(2/3) - (10/3)*x/y; v = (2/5)*x*y^(-1/3) - (7/3)*x^2/y^2 + (21/25)*y^(4/3)");
  Solution s{st.u, st.v, infer_domain(st.u, st.v), "sl2"};
  std::map<Symbol, Number> pt{{Symbol::base(Base::t), Number(0L)},
                              {Symbol::base(Base::x), Number(0L)},
                              {Symbol::base(Base::y), Number(1L)}};
  CHECK(evaluate(restrict_to_section(invariant(1), s), pt).rational() == mpq_class(-3, 25));
  CHECK(evaluate(restrict_to_section(invariant(2), s), pt).rational() == mpq_class(21, 100));
  CHECK(evaluate(restrict_to_section(invariant(3), s), pt).rational() == mpq_class(-147, 500));
  // u_xx vanishes identically, so the derivations and K's have a pole.
  CHECK(restrict_to_section(P("u_xx"), s).is_zero());
  CHECK_THROWS_AS(evaluate(restrict_to_section(structure_K(1), s), pt), Error);
}

TEST_CASE("invariance") {
  for (int i = 1; i <= 3; ++i) {
    INFO("I" << i);
    CHECK(verify_invariance(invariant(i), 2).invariant);
  }
  for (int i = 1; i <= 4; ++i) {
    INFO("K" << i);
    CHECK(verify_invariance(structure_K(i), 3).invariant);
  }
  for (std::size_t n = 3; n < 12; ++n) {
    INFO(basic_invariant_names()[n]);
    CHECK(verify_invariance(basic_invariants()[n], 3).invariant);
  }
  InvarianceResult ux = verify_invariance(P("u_x"), 1);
  CHECK_FALSE(ux.invariant);
  // The residual is a multiple of u_x.
  CHECK(substitute(ux.residual, {{*P("u_x").symbols().begin(), Expr()}}).is_zero());
  MESSAGE("L(u_x) for X" << ux.family << "(f): " << ux.residual.to_string());
}

TEST_CASE("commutators and identities") {
  for (const auto& c : verify_derivation_commutators()) {
    INFO(c.relation);
    CHECK(c.ok());
  }
  for (const auto& c : verify_identities()) {
    INFO(c.name << " residual " << c.residual.to_string());
    CHECK(c.ok());
  }
  std::mt19937 rng(17);
  for (int n = 0; n < 5; ++n) {
    JetPoint p = regular_point(rng, 4);
    for (const auto& c : verify_identities()) CHECK(evaluate(c.residual, p.valuation()).is_zero());
  }
}

TEST_CASE("coframe") {
  Coframe c = coframe_rewrite();
  ExprMatrix3 g = expected_coframe_metric();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      INFO(i << j << ": " << c.metric[i][j].to_string());
      CHECK(c.metric[i][j] == g[i][j]);
    }
  CHECK(c.determinant == P("-u_x^3"));
  auto w = expected_coframe_omega();
  CHECK(c.omega_adjusted == w);
  CHECK(c.omega_raw[0].is_zero());
  CHECK(c.omega_raw[2] != w[2]);
}

TEST_CASE("functional independence") {
  std::mt19937 rng(2);
  CHECK(jacobian_rank(regular_point(rng, 4)) == 12);
}

TEST_CASE("counting") {
  CHECK(counting(Series::ms, 2).h == 3);
  CHECK(counting(Series::ew_general, 2).h == 8);
  CHECK(counting(Series::weyl, 4).h == 51);
  CHECK(counting(Series::weyl, 2).h == 13);
  for (int k = 2; k <= 6; ++k) {
    CHECK(counting(Series::ms, k).s == 2 * k * k - k - 3);
    CHECK(counting(Series::ms, k).s == dims(k).dim_equation - (5 * k + 8));
    CHECK(counting(Series::ms, k).h == counting(Series::ms, k).s - counting(Series::ms, k - 1).s);
  }
  for (Series s : {Series::weyl, Series::ew_general, Series::ms}) {
    auto c = poincare_series(s, 8);
    for (int k = 0; k <= 8; ++k) CHECK(c[std::size_t(k)] == counting(s, k).h);
    CHECK(parse_series(series_name(s)) == s);
  }
  CHECK_FALSE(parse_series("bogus"));
}
