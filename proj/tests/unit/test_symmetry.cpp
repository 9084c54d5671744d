#include <chrono>
#include <random>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/linalg.hpp"
#include "ewinv/symmetry.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

const Expr f = Expr::formal("f");
const Expr g = Expr::formal("g");

Solution section(const char* text) {
  SolutionText st = parse_solution_text(text);
  return {st.u, st.v, infer_domain(st.u, st.v), text};
}

bool solves_ms(const Solution& s) {
  return restrict_to_section(ms_f1(), s).is_zero() && restrict_to_section(ms_f2(), s).is_zero();
}

}  // namespace

TEST_CASE("generator expansions") {
  CHECK(symmetry_field(1, f) == PointField{{Expr(), f, Expr()}, Expr(), P("f'(t)")});
  CHECK(symmetry_field(3, P("c(t)")).phi_v == P("u*c(t) + y*c'(t)"));
  CHECK(symmetry_field(4, Expr(1L)) == PointField{{Expr(1L), Expr(), Expr()}, Expr(), Expr()});
  CHECK(generating_section(symmetry_field(1, P("a(t)"))).phi_v == P("a'(t) - v_x*a(t)"));
  // Order-one coefficient of u_t for X2(b).
  Prolongation pr(symmetry_field(2, P("b(t)")), 4, false);
  CHECK(pr.coefficient(JetVar{Dependent::u, MultiIndex{1, 0, 0}}) == P("b''(t) - u_y*b'(t)"));
  CHECK_THROWS_AS(symmetry_field(6, f), Error);
}

TEST_CASE("commutation table") {
  auto start = std::chrono::steady_clock::now();
  auto cells = verify_commutation_table();
  REQUIRE(cells.size() == 25);
  for (const auto& c : cells) {
    INFO("cell " << c.i << "," << c.j << " residual " << c.residual.to_string());
    CHECK(c.ok());
  }
  CHECK(cells[1 * 5 + 3].expected.to_string() == table_entry(2, 4, f, g).to_string());
  CHECK(lie_bracket(symmetry_field(2, f), symmetry_field(3, g)) == symmetry_field(1, f * g));
  CHECK(lie_bracket(symmetry_field(1, f), symmetry_field(2, g)).is_zero());
  CHECK(lie_bracket(symmetry_field(4, f), symmetry_field(5, g)) == symmetry_field(5, f * P("g'(t)")));
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(30));
}

TEST_CASE("bracket identities on generator triples") {
  std::mt19937 rng(9);
  const char* params[] = {"f(t)", "g(t)", "t^2", "1", "h(t)*t"};
  for (int n = 0; n < 15; ++n) {
    PointField a = symmetry_field(1 + int(rng() % 5), P(params[rng() % 5]));
    PointField b = symmetry_field(1 + int(rng() % 5), P(params[rng() % 5]));
    PointField c = symmetry_field(1 + int(rng() % 5), P(params[rng() % 5]));
    REQUIRE((lie_bracket(a, b) + lie_bracket(b, a)).is_zero());
    REQUIRE((lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
             lie_bracket(c, lie_bracket(a, b)))
                .is_zero());
  }
}

TEST_CASE("symmetry property") {
  for (int i = 1; i <= 5; ++i) {
    INFO("family " << i);
    CHECK(check_symmetry(symmetry_field(i, f)).ok());
  }
  CHECK(check_symmetry(symmetry_field(4, Expr(1L))).ok());
  SymmetryCheck bad = check_symmetry(PointField{{Expr(), P("u"), Expr()}, Expr(), Expr()});
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.residual1.is_zero());
  CHECK(bad.residual1.jet_order() >= 0);
}

TEST_CASE("grading") {
  GradingReport rep = grading_check();
  for (const auto& n : rep.notes) INFO(n);
  CHECK(rep.graded);
  CHECK(rep.perfect);
  auto d = decompose(lie_bracket(symmetry_field(2, f), symmetry_field(3, g)));
  REQUIRE(d);
  CHECK(d->parameters[0] == f * g);
  auto d2 = decompose(symmetry_field(5, f) + symmetry_field(1, P("t")) + symmetry_field(3, g));
  REQUIRE(d2);
  CHECK(d2->parameters[4] == f);
  CHECK(d2->parameters[0] == P("t"));
  CHECK(d2->parameters[2] == g);
  CHECK_FALSE(decompose(PointField{{Expr(), P("u"), Expr()}, Expr(), Expr()}));
}

TEST_CASE("shape field lift") {
  Expr a = P("a(t)"), b = P("b(t)"), c = P("c(t)"), d = P("d(t)"), e = P("e(t)");
  CHECK(lift_shape_field({a, {}, {}, {}, {}}).field == symmetry_field(1, a));
  CHECK(lift_shape_field({{}, b, {}, {}, {}}).field == symmetry_field(2, b));
  CHECK(lift_shape_field({{}, {}, c, {}, {}}).field == symmetry_field(3, c));
  CHECK(lift_shape_field({{}, {}, {}, d, {}}).field == symmetry_field(4, d));
  CHECK(lift_shape_field({{}, {}, {}, {}, e}).field == symmetry_field(5, e));
  Lift all = lift_shape_field({a, b, c, d, e});
  CHECK(all.chi == P("d'(t) + 2*e(t)"));
  CHECK(lift_shape_field({a, b, c, Expr(2L) * d, e}).chi == P("2*(e(t) + d'(t))"));
  CHECK(check_symmetry(all.field).ok());
  auto dec = decompose(all.field);
  REQUIRE(dec);
  CHECK(dec->parameters[3] == d);
}

TEST_CASE("pseudogroup action") {
  Solution s = section("u = x + exp(y); v = 0");
  Solution same = apply_pseudogroup(PseudogroupElement::identity(), s);
  CHECK(same.u == s.u);
  CHECK(same.v == s.v);

  PseudogroupElement tr;
  tr.A = Expr(1L);
  Solution z = apply_pseudogroup(tr, section("u = 0; v = 0"));
  CHECK(z.u.is_zero());
  CHECK(z.v.is_zero());

  PseudogroupElement sc;
  sc.E = Expr(2L);
  Solution s2 = apply_pseudogroup(sc, s);
  CHECK(solves_ms(s2));
  CHECK(s2.u != s.u);

  // Random polynomial elements on polynomial and rational sections.
  std::mt19937 rng(4);
  const char* polys[] = {"0", "1", "t", "t^2 - 1", "2*t + 3", "-t/2"};
  const char* sections[] = {"u = 0; v = y^4/12 + x*y + 3", "u = -(10/3)*x/y; v = -(7/3)*x^2/y^2 + 2*y^2",
                            "u = x + exp(y); v = 5 + exp(-y)", "u = x; v = 0"};
  for (int n = 0; n < 12; ++n) {
    PseudogroupElement pg;
    pg.alpha = mpq_class(1 + int(rng() % 3), 1 + int(rng() % 2));
    pg.beta = mpq_class(int(rng() % 5) - 2);
    pg.A = P(polys[rng() % 6]);
    pg.C = P(polys[rng() % 6]);
    Solution base = section(sections[n % 4]);
    if (n % 4 != 2) {
      pg.B = P(polys[rng() % 6]);
      pg.E = P(n % 2 ? "1 + t^2" : "3");
    } else {
      pg.beta = 0;
      pg.E = P("1/2");
    }
    INFO(pg.to_string() << " on " << base.provenance);
    Solution img = apply_pseudogroup(pg, base);
    REQUIRE(solves_ms(img));
  }

  PseudogroupElement bad;
  bad.alpha = -1;
  CHECK_THROWS_AS(apply_pseudogroup(bad, s), Error);
  PseudogroupElement shift;
  shift.B = Expr(1L);
  try {
    apply_pseudogroup(shift, s);
    FAIL("expected non_representable");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::non_representable);
  }
}

TEST_CASE("pseudogroup point map") {
  PseudogroupElement pg;
  pg.alpha = 2;
  pg.beta = 1;
  pg.E = P("1 + t");
  pg.A = P("t");
  auto q = pseudogroup_point(pg, {mpq_class(1), mpq_class(2), mpq_class(3)});
  CHECK(q[0].rational() == 5);
  CHECK(q[1].rational() == 4 * 2 + 2 * 9 + 1);
  CHECK(q[2].rational() == 12);
}

TEST_CASE("orbit dimensions") {
  std::mt19937 rng(21);
  CHECK(orbit_dimension(1, random_jet_point(1, rng)) == 11);
  CHECK(orbit_dimension(2, orbit_reference_point(2)) == 18);
  CHECK(orbit_dimension(3, orbit_reference_point(3)) == 23);
  for (int i = 0; i < 3; ++i) CHECK(orbit_dimension(2, random_jet_point(2, rng)) >= 18);
}

TEST_CASE("exact linear algebra") {
  RationalMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(m) == 2);
  CHECK(determinant(m) == 0);
  CHECK(determinant(RationalMatrix{{0, 1}, {1, 0}}) == -1);
  NumberMatrix n{{Number::parse("0.5"), Number(1L)}, {Number(1L), Number(2L)}};
  CHECK(rank(n) == 1);
}
