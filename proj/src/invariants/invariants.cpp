#include "ewinv/invariants.hpp"

#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/fields.hpp"
#include "ewinv/linalg.hpp"
#include "ewinv/symmetry.hpp"

namespace ewinv {

namespace {

Expr P(const char* s) { return parse_expr(s); }

void check_index(int i, int n, const char* what) {
  if (i < 1 || i > n) fail(ErrorKind::invalid_argument, std::string(what) + " index out of range");
}

}  // namespace

const Expr& invariant(int i) {
  check_index(i, 3, "invariant");
  static const std::array<Expr, 3> inv = {
      P("(u_xy + v_xx)/u_x^2"),
      P("(u_x^2*u_xy + u_x*u_xx*v_x + u_xx*u_yy - u_xy^2)/u_x^4"),
      P("(u_x^2*v_xx - u_x*u_xx*v_x + u_xx*v_xy - u_xy*v_xx)/u_x^4"),
  };
  return inv[std::size_t(i - 1)];
}

Expr InvariantDerivation::apply(const Expr& e, int order_cap) const {
  Expr r;
  for (Base b : kBases)
    if (!coef[std::size_t(b)].is_zero()) r += coef[std::size_t(b)] * total_derivative(e, b, order_cap);
  return reduce_on_equation(r, order_cap);
}

const InvariantDerivation& derivation(int i) {
  check_index(i, 3, "derivation");
  static const std::array<InvariantDerivation, 3> d = {
      InvariantDerivation{{Expr(), P("u_x/u_xx"), Expr()}},
      InvariantDerivation{{Expr(), P("u_xy/(u_x*u_xx)"), P("-1/u_x")}},
      InvariantDerivation{{P("u_xx/u_x^3"), P("(v_x*u_x + v*u_xx + u_yy)/u_x^3"),
                           P("(u_x^2 + u*u_xx - 2*u_xy)/u_x^3")}},
  };
  return d[std::size_t(i - 1)];
}

Expr apply_derivation(int i, const Expr& e) { return derivation(i).apply(e); }

const Expr& structure_K(int i) {
  check_index(i, 4, "structure coefficient");
  static const std::array<Expr, 4> k = [] {
    const InvariantDerivation& n2 = derivation(2);
    Expr k1 = P("u_x*u_xxx/u_xx^2 - 3");
    Expr k2 = P("(u_xy*u_xxx - u_xx*u_xxy)/(u_x*u_xx^2)");
    Expr k3 = k2 * P("1 - 2*u_xy/u_x^2") - P("2*u_xx/u_x^3") * n2.apply(P("u_y")) +
              P("2/u_x^2") * n2.apply(P("u_xy"));
    Expr k4 = (P("u_xx") * n2.apply(P("2*u_yy - u_x*u_y")) -
               n2.apply(P("u_xy/u_xx")) * P("u_xx*(2*u_xy - u_x^2)") - n2.apply(P("u_xy^2"))) /
              P("u_x^4");
    return std::array<Expr, 4>{k1, k2, reduce_on_equation(k3), reduce_on_equation(k4)};
  }();
  return k[std::size_t(i - 1)];
}

const std::vector<Expr>& basic_invariants() {
  static const std::vector<Expr> b = [] {
    std::vector<Expr> r;
    for (int i = 1; i <= 3; ++i) r.push_back(invariant(i));
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) r.push_back(apply_derivation(j, invariant(i)));
    return r;
  }();
  return b;
}

std::vector<std::string> basic_invariant_names() {
  std::vector<std::string> r{"I1", "I2", "I3"};
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) r.push_back("I" + std::to_string(i) + std::to_string(j));
  return r;
}

InvarianceResult verify_invariance(const Expr& e, int k) {
  int cap = std::max(kDefaultOrderCap, k);
  Expr re = reduce_on_equation(e, cap);
  if (re.jet_order() > k) fail(ErrorKind::order_cap_exceeded, "expression order exceeds k");
  const Expr f = Expr::formal("f");
  for (int family = 1; family <= 5; ++family) {
    Expr r = Prolongation(symmetry_field(family, f), cap, true).apply(re);
    if (!r.is_zero()) return {false, family, r};
  }
  return {};
}

namespace {

// Coefficients of [A, B] as an operator in D_t, D_x, D_y.
std::array<Expr, 3> commutator(const InvariantDerivation& a, const InvariantDerivation& b) {
  std::array<Expr, 3> r;
  for (std::size_t j = 0; j < 3; ++j) r[j] = a.apply(b.coef[j]) - b.apply(a.coef[j]);
  return r;
}

std::array<Expr, 3> combination(const Expr& c1, const Expr& c2, const Expr& c3) {
  std::array<Expr, 3> r;
  for (std::size_t j = 0; j < 3; ++j)
    r[j] = c1 * derivation(1).coef[j] + c2 * derivation(2).coef[j] + c3 * derivation(3).coef[j];
  return r;
}

}  // namespace

std::vector<CommutatorCheck> verify_derivation_commutators() {
  const Expr &k1 = structure_K(1), &k2 = structure_K(2), &k3 = structure_K(3), &k4 = structure_K(4);
  struct Rel {
    int i, j;
    const char* text;
    std::array<Expr, 3> rhs;
  };
  std::vector<Rel> rels = {
      {1, 2, "[n1,n2] = -n2", combination(Expr(), Expr(-1L), Expr())},
      {1, 3, "[n1,n3] = -K3 n1 + (K1 - 2 K2) n2 + K1 n3", combination(-k3, k1 - Expr(2L) * k2, k1)},
      {2, 3, "[n2,n3] = K4 n1 + K3 n2 + K2 n3", combination(k4, k3, k2)},
  };
  std::vector<CommutatorCheck> out;
  for (const Rel& r : rels) {
    CommutatorCheck c;
    c.i = r.i;
    c.j = r.j;
    c.relation = r.text;
    auto lhs = commutator(derivation(r.i), derivation(r.j));
    for (std::size_t k = 0; k < 3; ++k) c.residual[k] = reduce_on_equation(lhs[k] - r.rhs[k]);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<IdentityCheck> verify_identities() {
  const Expr &k1 = structure_K(1), &k2 = structure_K(2), &k3 = structure_K(3), &k4 = structure_K(4);
  const Expr &i1 = invariant(1), &i2 = invariant(2), &i3 = invariant(3);
  Expr n1 = apply_derivation(1, i2), n2 = apply_derivation(2, i2);
  Expr r1 = i1 - (n1 + (k2 + k3) * Expr(mpq_class(1, 2)) - i2 * k1);
  Expr r3 = i3 - (n1 - n2 + (k2 + Expr(3L) * k3 + Expr(2L) * k4) * Expr(mpq_class(1, 4)) +
                  i2 * (k2 - k1 - Expr(1L)));
  return {{"I1 = n1(I2) + (K2 + K3)/2 - I2 K1", reduce_on_equation(r1)},
          {"I3 = (n1 - n2)(I2) + (K2 + 3 K3 + 2 K4)/4 + I2 (K2 - K1 - 1)", reduce_on_equation(r3)}};
}

Coframe coframe_rewrite() {
  Expr u = P("u"), v = P("v"), ux = P("u_x");
  ExprMatrix3 g;
  g[0][0] = -(u * u + Expr(4L) * v);
  g[0][1] = g[1][0] = Expr(2L);
  g[0][2] = g[2][0] = u;
  g[2][2] = Expr(-1L);
  std::array<Expr, 3> omega = {P("u*u_x + 2*u_y + 4*v_x"), Expr(), -ux};
  Coframe c;
  for (int i = 0; i < 3; ++i) {
    const auto& a = derivation(i + 1).coef;
    for (int j = 0; j < 3; ++j) {
      const auto& b = derivation(j + 1).coef;
      Expr s;
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) s += g[k][l] * a[k] * b[l];
      c.metric[std::size_t(i)][std::size_t(j)] = reduce_on_equation(ux * ux * s);
    }
    Expr w;
    for (std::size_t k = 0; k < 3; ++k) w += omega[k] * a[k];
    c.omega_raw[std::size_t(i)] = reduce_on_equation(w);
    c.omega_adjusted[std::size_t(i)] =
        reduce_on_equation(w + Expr(2L) * derivation(i + 1).apply(ux) / ux);
  }
  const auto &a = derivation(1).coef, &b = derivation(2).coef, &d = derivation(3).coef;
  Expr det = a[0] * (b[1] * d[2] - b[2] * d[1]) - a[1] * (b[0] * d[2] - b[2] * d[0]) +
             a[2] * (b[0] * d[1] - b[1] * d[0]);
  c.determinant = Expr(1L) / det;
  return c;
}

ExprMatrix3 expected_coframe_metric() {
  Expr g33 = Expr(4L) * invariant(2) - Expr(1L);
  return {{{Expr(), Expr(), Expr(2L)}, {Expr(), Expr(-1L), Expr(1L)}, {Expr(2L), Expr(1L), g33}}};
}

std::array<Expr, 3> expected_coframe_omega() {
  return {Expr(2L), Expr(1L), Expr(4L) * invariant(2) - Expr(1L)};
}

int jacobian_rank(const JetPoint& p) {
  std::vector<JetVar> jets = internal_jets(3, true);
  NumberMatrix m;
  Valuation val = p.valuation();
  for (const Expr& e : basic_invariants()) {
    std::vector<Number> row;
    for (const JetVar& j : jets) row.push_back(evaluate(partial(e, Symbol::jet(j)), val));
    m.push_back(std::move(row));
  }
  return rank(m);
}

std::string series_name(Series s) {
  switch (s) {
    case Series::weyl: return "weyl";
    case Series::ew_general: return "ew-general";
    case Series::ms: return "ms";
  }
  return "";
}

std::optional<Series> parse_series(const std::string& name) {
  for (Series s : {Series::weyl, Series::ew_general, Series::ms})
    if (series_name(s) == name) return s;
  return std::nullopt;
}

namespace {

long h_closed(Series series, int k) {
  if (k < 2) return 0;
  long kk = k;
  switch (series) {
    case Series::weyl: return k == 2 ? 13 : (5 * kk * kk + 7 * kk - 6) / 2;
    case Series::ew_general: return k == 2 ? 8 : 3 * (2 * kk - 1);
    case Series::ms: return k == 2 ? 3 : 4 * kk - 3;
  }
  return 0;
}

long binomial(long n, long r) {
  if (r < 0 || n < r) return 0;
  long b = 1;
  for (long i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

}  // namespace

CountRecord counting(Series series, int k) {
  if (k < 0) fail(ErrorKind::invalid_argument, "order must be non-negative");
  CountRecord r;
  r.series = series;
  r.k = k;
  r.h = h_closed(series, k);
  for (int i = 0; i <= k; ++i) r.s += h_closed(series, i);
  return r;
}

std::vector<long> poincare_series(Series series, int order) {
  // numerator coefficients (by power of z) over (1 - z)^p
  std::vector<std::pair<int, long>> num;
  int p = 2;
  switch (series) {
    case Series::weyl:
      num = {{2, 13}, {3, -9}, {5, 1}};
      p = 3;
      break;
    case Series::ew_general: num = {{2, 8}, {3, -1}, {4, -1}}; break;
    case Series::ms: num = {{2, 3}, {3, 3}, {4, -2}}; break;
  }
  std::vector<long> c(std::size_t(order + 1), 0);
  for (int n = 0; n <= order; ++n)
    for (auto [i, a] : num)
      if (n >= i) c[std::size_t(n)] += a * binomial(n - i + p - 1, p - 1);
  return c;
}

}  // namespace ewinv
