#include <chrono>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/geometry.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

Solution section(const char* text) {
  SolutionText st = parse_solution_text(text);
  return {st.u, st.v, infer_domain(st.u, st.v), text};
}

}  // namespace

TEST_CASE("normal form pair") {
  WeylPair p = build_pair(section("u = 0; v = 0"));
  CHECK(p.g[0][1] == Expr(2L));
  CHECK(p.g[2][2] == Expr(-1L));
  CHECK(p.g[0][0].is_zero());
  for (const Expr& w : p.omega) CHECK(w.is_zero());
  WeylPair q = build_pair(section("u = x + exp(y); v = 0"));
  CHECK(q.omega[0] == P("x + exp(y) + 2*exp(y)"));
  CHECK(q.omega[2] == Expr(-1L));
  CHECK(q.g[0][2] == P("x + exp(y)"));
  CHECK(q.g[0][0] == P("-(x + exp(y))^2"));
}

TEST_CASE("flat case") {
  WeylPair p = build_pair(section("u = 0; v = 0"));
  Christoffel c = weyl_connection(p);
  for (const auto& m : c)
    for (const auto& row : m)
      for (const Expr& e : row) CHECK(e.is_zero());
  Matrix3 ric = ricci(c);
  for (const auto& row : ric)
    for (const Expr& e : row) CHECK(e.is_zero());
}

TEST_CASE("catalog geometry") {
  for (const std::string& id : catalog_ids()) {
    auto start = std::chrono::steady_clock::now();
    Solution s = catalog(id);
    GeometryReport r = analyze(s);
    INFO(id << " lambda " << r.lambda.to_string());
    CHECK(r.ms_ok());
    CHECK(r.nonmetricity_ok());
    CHECK(r.skew_ok());
    CHECK(r.ew_ok());
    MESSAGE(id << ": Lambda = " << r.lambda.to_string() << " ("
               << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s)");
  }
  CHECK(analyze(catalog("exp-family")).lambda == P("1/8"));
  CHECK(analyze(catalog("dkp-partial")).lambda.is_zero());
  CHECK(analyze(catalog("sl2-family")).lambda == P("1/(18*y^2)"));
}

TEST_CASE("mutated connection breaks the checks") {
  GeometryReport r = analyze(catalog("exp-family"), CorrectionSign::plus);
  CHECK_FALSE(r.nonmetricity_ok());
  CHECK_FALSE((r.skew_ok() && r.ew_ok()));
}

TEST_CASE("numeric Einstein-Weyl check") {
  Solution s = catalog("exp-family", Expr(1L), Expr(1L));
  SamplePoint origin;
  EwCheck c = check_EW(s, {origin});
  CHECK(c.passed());
  for (const std::string& id : catalog_ids()) {
    Solution sol = catalog(id);
    std::set<Symbol> syms = sol.u.symbols();
    for (Symbol x : sol.v.symbols()) syms.insert(x);
    auto pts = sample_points(sol.domain, syms, 20, 1);
    EwCheck ec = check_EW(sol, pts);
    INFO(id << " max residual " << ec.max_ew_residual().to_string());
    CHECK(ec.passed());
  }
  Solution bad = section("u = x; v = x^2");
  CHECK_FALSE(analyze(bad).ms_ok());
  EwCheck nb = check_EW(bad, sample_points(bad.domain, {}, 5, 3));
  CHECK_FALSE(nb.passed());
}

TEST_CASE("sample points") {
  Domain d;
  d.y_positive = true;
  d.t_lower = mpq_class(0);
  auto a = sample_points(d, {Symbol::formal("f")}, 30, 7);
  auto b = sample_points(d, {Symbol::formal("f")}, 30, 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(d.contains(a[i].base[0], a[i].base[2]));
    CHECK(a[i].base == b[i].base);
    CHECK(a[i].formal.count(Symbol::formal("f", 3)) == 1);
  }
}

TEST_CASE("canonical frame") {
  CanonicalFrame flat = canonical_frame(build_pair(section("u = 0; v = 0")), SamplePoint{});
  CHECK(flat.degeneracy);
  SamplePoint pt;
  pt.base = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(2)};
  Solution s = catalog("hierarchy");
  CanonicalFrame fr = canonical_frame(build_pair(s), pt);
  if (fr.degeneracy) {
    MESSAGE("hierarchy frame: " << *fr.degeneracy);
  } else {
    MESSAGE("J^2 = " << fr.j_square.to_string() << ", |d omega|^2 = " << fr.norm.to_string());
    CHECK(abs(abs(fr.j_square.to_float()) - 1) < 1e-30);
  }
}

TEST_CASE("catalog reductions") {
  HierarchyCheck hc = hierarchy_identity();
  INFO(hc.r1.to_string() << " | " << hc.r2.to_string());
  CHECK(hc.ok());
  CHECK(dkp_residual().is_zero());
  CHECK(hierarchy_lhs(hierarchy_potential()) == P("-2/(3*t)"));
  CHECK(satisfies_hierarchy(hierarchy_potential()));
  CHECK_FALSE(satisfies_hierarchy(P("x^2*y^2")));
  CHECK(analyze(hierarchy_solution(P("x^3 + t*x^2 + (t^2/3)*x + y*(t^3/27 + 1/3)"))).ms_ok() ==
        satisfies_hierarchy(P("x^3 + t*x^2 + (t^2/3)*x + y*(t^3/27 + 1/3)")));
  Solution e = catalog("exp-family", Expr(), Expr());
  CHECK(e.u == P("x + exp(y)"));
  CHECK(e.v.is_zero());
  CHECK(parse_catalog_id("exp-family(0, 0)").v.is_zero());
  CHECK(parse_catalog_id("sl2-family(t, 2)").domain.y_positive);
  CHECK(catalog("hierarchy").domain.t_lower == mpq_class(0));
  CHECK_THROWS_AS(catalog("nope"), Error);
  Solution d = catalog("dkp-partial");
  CHECK(d.u.is_zero());
  CHECK(restrict_to_section(P("v_tx + v_x^2 + v*v_xx - v_yy"), d).is_zero());
}
