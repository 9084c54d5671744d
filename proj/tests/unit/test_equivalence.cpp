#include <random>

#include "doctest.h"
#include "ewinv/dsl.hpp"
#include "ewinv/equivalence.hpp"
#include "ewinv/error.hpp"
#include "ewinv/geometry.hpp"
#include "ewinv/invariants.hpp"

using namespace ewinv;

namespace {

Expr P(const std::string& s) { return parse_expr(s); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::invalid_argument;
}

// On-equation 4-jet with u_x, u_xx away from zero.
JetPoint generic_jet(std::mt19937& rng) {
  for (;;) {
    JetPoint p = random_jet_point(4, rng);
    if (!p.value(Symbol::jet(Dependent::u, 0, 1, 0)).is_zero() &&
        !p.value(Symbol::jet(Dependent::u, 0, 2, 0)).is_zero())
      return p;
  }
}

}  // namespace

TEST_CASE("signature of a degenerate catalog section") {
  Solution s = catalog("sl2-family", Expr(), Expr());
  CHECK(signature_components(s).size() == 3);
  SignatureCloud c = signature(s, {16, 3, 8});
  REQUIRE(c.points.size() == 16);
  CHECK(c.precision == "exact");
  for (const auto& row : c.values) {
    REQUIRE(row.size() == 3);
    CHECK(row[0].rational() == mpq_class(-3, 25));
    CHECK(row[1].rational() == mpq_class(21, 100));
    CHECK(row[2].rational() == mpq_class(-147, 500));
  }
  bool noted = false;
  for (const auto& n : c.notes) noted |= n.find("not I-regular") != std::string::npos;
  CHECK(noted);
  for (const auto& p : c.points) CHECK(s.domain.contains(p[0], p[2]));
}

TEST_CASE("singular sections") {
  CHECK(kind_of([] { signature(catalog("trivial")); }) == ErrorKind::all_samples_singular);
  CHECK(kind_of([] { signature(catalog("dkp-partial", Expr(), Expr(1L))); }) == ErrorKind::all_samples_singular);
  CHECK(kind_of([] { signature(catalog("exp-family")); }) == ErrorKind::invalid_argument);
  Solution lin{P("x*y"), Expr(), {}, "xy"};
  CHECK(kind_of([&] { signature_at(lin, {BasePoint{0, 0, 0}}); }) == ErrorKind::singular_locus);
}

TEST_CASE("comparison verdicts") {
  SignatureCloud a = signature(catalog("sl2-family", Expr(), Expr()), {12, 0, 8});
  SignatureCloud b = signature(catalog("exp-family", Expr(), Expr()), {12, 0, 8});
  for (const auto& row : b.values)
    for (const Number& n : row) CHECK(n.is_zero());
  Comparison ab = compare(a, b, 1e-9);
  CHECK(ab.verdict == Verdict::distinct);
  Comparison ba = compare(b, a, 1e-9);
  CHECK(ba.verdict == ab.verdict);
  CHECK(ba.distance == ab.distance);
  CHECK(compare(a, a, 0).verdict == Verdict::equivalent_evidence);
  // a coarse enough tolerance cannot separate them
  CHECK(compare(a, b, 10).verdict != Verdict::distinct);
  SignatureCloud few = signature(catalog("sl2-family", Expr(), Expr()), {3, 0, 8});
  CHECK(compare(a, few, 1e-9).verdict == Verdict::inconclusive);

  // twelve components against three: compared on the common ones
  SignatureCloud h = signature(catalog("hierarchy"), {10, 1, 8});
  CHECK(h.components.size() == 12);
  Comparison hc = compare(h, a, 1e-9);
  CHECK(hc.verdict == Verdict::distinct);
  CHECK_FALSE(hc.notes.empty());
}

TEST_CASE("tolerance monotonicity") {
  SignatureCloud h1 = signature(catalog("hierarchy"), {10, 1, 8});
  SignatureCloud h2 = signature(catalog("hierarchy"), {10, 2, 8});
  int last = 0;
  for (double tol : {1e-12, 1e-6, 1e-2, 1.0, 100.0, 1e6}) {
    Comparison c = compare(h1, h2, tol);
    int rank = c.verdict == Verdict::distinct ? 0 : 1;
    CHECK(rank >= last);
    last = rank;
  }
  CHECK(last == 1);
}

TEST_CASE("signature json round trip") {
  SignatureCloud c = signature(catalog("hierarchy"), {6, 5, 8});
  nlohmann::json j = to_json(c);
  CHECK(j["precision"] == "exact");
  CHECK(j["values"][0][0].is_string());
  SignatureCloud back = cloud_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.points == c.points);
  CHECK(back.components == c.components);
  REQUIRE(back.values.size() == c.values.size());
  for (std::size_t i = 0; i < c.values.size(); ++i)
    for (std::size_t k = 0; k < c.values[i].size(); ++k)
      CHECK(back.values[i][k].rational() == c.values[i][k].rational());
  CHECK(compare(c, back, 0).verdict != Verdict::distinct);
  CHECK(kind_of([] { cloud_from_json(nlohmann::json::parse(R"({"points": 3})")); }) == ErrorKind::syntax_error);
}

TEST_CASE("generic sections are I-regular") {
  std::mt19937 rng(77);
  for (int n = 0; n < 3; ++n) {
    JetPoint jp = generic_jet(rng);
    Solution s = taylor_section(jp, 4);
    BasePoint p = jp.base;
    for (const Expr& e : basic_invariants())
      CHECK((evaluate_on_section(e, s, p) - evaluate_on_equation(e, jp)).is_zero());
    CHECK(signature_rank(s, p) == 3);
    CHECK(i_regular(s, p));
  }
}

TEST_CASE("signature invariance under the pseudogroup") {
  std::mt19937 rng(5);
  const char* polys[] = {"0", "1", "t", "t^2 - 1", "2*t + 3", "-t/2"};
  for (int n = 0; n < 3; ++n) {
    JetPoint jp = generic_jet(rng);
    Solution s = taylor_section(jp, 4);
    PseudogroupElement g;
    g.alpha = mpq_class(1 + int(rng() % 3), 1 + int(rng() % 2));
    g.beta = mpq_class(int(rng() % 5) - 2);
    g.A = P(polys[rng() % 6]);
    g.B = P(polys[rng() % 6]);
    g.C = P(polys[rng() % 6]);
    g.E = P(n % 2 ? "1 + t^2" : "3");
    INFO(g.to_string());
    // a Taylor section solves the equation only to finite order at its base point
    CHECK(invariance_defect(s, g, {jp.base}).is_zero());
  }
  Solution sl2 = catalog("sl2-family", Expr(), Expr());
  PseudogroupElement g;
  g.alpha = 2;
  g.E = P("4");  // alpha E must be a cube for y^(2/3)
  g.C = P("t");
  g.A = P("1");
  CHECK(invariance_defect(sl2, g, {BasePoint{1, 1, 1}, BasePoint{mpq_class(1, 2), -1, 3}}).is_zero());
}
