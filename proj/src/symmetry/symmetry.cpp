#include "ewinv/symmetry.hpp"

#include <set>

#include "ewinv/error.hpp"
#include "ewinv/linalg.hpp"

namespace ewinv {

namespace {

const Expr& U() {
  static const Expr u = Expr::jet(Dependent::u, 0, 0, 0);
  return u;
}

const Expr& V() {
  static const Expr v = Expr::jet(Dependent::v, 0, 0, 0);
  return v;
}

Expr dt(const Expr& f) { return partial(f, Base::t); }

Expr half(const Expr& e) { return e * Expr(mpq_class(1, 2)); }

bool function_of_t(const Expr& e) {
  for (Symbol s : e.symbols()) {
    if (s.is_formal()) continue;
    if ((s.is_base() || s.is_exp()) && s.base_var() == Base::t) continue;
    return false;
  }
  return true;
}

}  // namespace

PointField symmetry_field(int family, const Expr& p) {
  const Expr x = Expr::x(), y = Expr::y();
  const Expr& u = U();
  const Expr& v = V();
  switch (family) {
    case 1:
      return {{Expr(), p, Expr()}, Expr(), dt(p)};
    case 2:
      return {{Expr(), Expr(), p}, dt(p), Expr()};
    case 3:
      return {{Expr(), y * p, Expr()}, Expr(-2L) * p, u * p + y * dt(p)};
    case 4: {
      Expr d1 = dt(p), d2 = dt(d1);
      return {{p, Expr(), half(d1 * y)}, half(y * d2 - u * d1), -d1 * v};
    }
    case 5: {
      Expr e1 = dt(p), e2 = dt(e1);
      return {{Expr(), y * y * e1 + Expr(2L) * x * p, y * p},
              u * p - Expr(3L) * y * e1,
              y * y * e2 + Expr(2L) * y * u * e1 + Expr(2L) * v * p + Expr(2L) * x * e1};
    }
    default:
      fail(ErrorKind::invalid_argument, "symmetry family must be 1..5");
  }
}

PointField SymmetryGenerator::field() const { return symmetry_field(family, parameter); }

std::string SymmetryGenerator::to_string() const {
  return "X" + std::to_string(family) + "(" + parameter.to_string() + ")";
}

PointField GeneratorSum::field() const {
  PointField r;
  for (int i = 0; i < 5; ++i)
    if (!parameters[std::size_t(i)].is_zero()) r = r + symmetry_field(i + 1, parameters[std::size_t(i)]);
  return r;
}

std::string GeneratorSum::to_string() const {
  std::string s;
  for (int i = 0; i < 5; ++i) {
    if (parameters[std::size_t(i)].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "X" + std::to_string(i + 1) + "(" + parameters[std::size_t(i)].to_string() + ")";
  }
  return s.empty() ? "0" : s;
}

std::optional<GeneratorSum> decompose(const PointField& z) {
  try {
    GeneratorSum g;
    Symbol y = Symbol::base(Base::y);
    g.parameters[3] = z.alpha[0];
    PointField rest = z - symmetry_field(4, g.parameters[3]);
    g.parameters[4] = coefficient(rest.alpha[2], y, Exp(1));
    g.parameters[1] = coefficient(rest.alpha[2], y, Exp(0));
    rest = rest - symmetry_field(5, g.parameters[4]) - symmetry_field(2, g.parameters[1]);
    g.parameters[0] = coefficient(rest.alpha[1], y, Exp(0));
    g.parameters[2] = coefficient(rest.alpha[1], y, Exp(1));
    for (const Expr& p : g.parameters)
      if (!function_of_t(p)) return std::nullopt;
    if (!(g.field() == z)) return std::nullopt;
    return g;
  } catch (const Error&) {
    return std::nullopt;
  }
}

GeneratorSum table_entry(int i, int j, const Expr& f, const Expr& g) {
  if (i < 1 || i > 5 || j < 1 || j > 5) fail(ErrorKind::invalid_argument, "table index must be 1..5");
  if (i > j) {
    GeneratorSum r = table_entry(j, i, g, f);
    for (Expr& p : r.parameters) p = -p;
    return r;
  }
  GeneratorSum r;
  auto& p = r.parameters;
  Expr df = dt(f), dg = dt(g);
  switch (i * 10 + j) {
    case 14: p[0] = -g * df; break;
    case 15: p[0] = Expr(2L) * f * g; break;
    case 23: p[0] = f * g; break;
    case 24: p[1] = half(f * dg) - g * df; break;
    case 25:
      p[1] = f * g;
      p[2] = Expr(2L) * f * dg;
      break;
    case 34: p[2] = -g * df - half(f * dg); break;
    case 35: p[2] = f * g; break;
    case 44: p[3] = f * dg - g * df; break;
    case 45: p[4] = f * dg; break;
    default: break;
  }
  return r;
}

std::vector<TableCell> verify_commutation_table() {
  Expr f = Expr::formal("f"), g = Expr::formal("g");
  std::vector<TableCell> cells;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      TableCell c;
      c.i = i;
      c.j = j;
      c.expected = table_entry(i, j, f, g);
      c.residual = lie_bracket(symmetry_field(i, f), symmetry_field(j, g)) - c.expected.field();
      cells.push_back(std::move(c));
    }
  return cells;
}

SymmetryCheck check_symmetry(const PointField& x) {
  Prolongation pr(x, kDefaultOrderCap, true);
  return {pr.apply(ms_f1()), pr.apply(ms_f2())};
}

int grade(int family) {
  switch (family) {
    case 1: return 2;
    case 2:
    case 3: return 1;
    case 4:
    case 5: return 0;
    default: fail(ErrorKind::invalid_argument, "symmetry family must be 1..5");
  }
}

GradingReport grading_check() {
  GradingReport rep;
  Expr f = Expr::formal("f"), g = Expr::formal("g");
  std::set<int> spanned;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      PointField bracket = lie_bracket(symmetry_field(i, f), symmetry_field(j, g));
      auto dec = decompose(bracket);
      std::string cell = "[X" + std::to_string(i) + ", X" + std::to_string(j) + "]";
      if (!dec) {
        rep.graded = false;
        rep.notes.push_back(cell + " is not in the span of the generators");
        continue;
      }
      int target = grade(i) + grade(j);
      for (int k = 1; k <= 5; ++k) {
        if (dec->parameters[std::size_t(k - 1)].is_zero()) continue;
        spanned.insert(k);
        if (grade(k) != target) {
          rep.graded = false;
          rep.notes.push_back(cell + " has an X" + std::to_string(k) + " component outside degree " +
                              std::to_string(target));
        }
      }
    }
  for (int k = 1; k <= 5; ++k)
    if (!spanned.count(k)) {
      rep.perfect = false;
      rep.notes.push_back("X" + std::to_string(k) + " is not reached by brackets");
    }
  return rep;
}

PointField ShapeField::field() const {
  const Expr x = Expr::x(), y = Expr::y();
  Expr dd = dt(d), de = dt(e);
  return {{d, a + y * c + y * y * de + Expr(2L) * x * e, b + half(dd * y) + y * e}, Expr(), Expr()};
}

namespace {

using Metric = std::array<std::array<Expr, 3>, 3>;

Metric normal_form_metric() {
  Metric g;
  g[0][0] = -(U() * U() + Expr(4L) * V());
  g[0][1] = g[1][0] = Expr(2L);
  g[0][2] = g[2][0] = U();
  g[2][2] = Expr(-1L);
  return g;
}

}  // namespace

Lift lift_shape_field(const ShapeField& s) {
  PointField x = s.field();
  Metric g = normal_form_metric();
  // S_ij = g_kj d_i alpha^k + g_ik d_j alpha^k
  Metric S;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Expr r;
      for (std::size_t k = 0; k < 3; ++k) {
        r += g[k][j] * partial(x.alpha[k], kBases[i]);
        r += g[i][k] * partial(x.alpha[k], kBases[j]);
      }
      S[i][j] = r;
    }
  Lift lift;
  lift.chi = -S[2][2];
  x.phi_u = lift.chi * U() - S[0][2];
  x.phi_v = (S[0][0] - Expr(2L) * U() * x.phi_u + lift.chi * (U() * U() + Expr(4L) * V())) *
            Expr(mpq_class(1, 4));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) {
      Expr lie = x.apply(g[i][j]) + S[i][j];
      if (!(lie - lift.chi * g[i][j]).is_zero())
        fail(ErrorKind::inconsistent_lift, "the shape field has no conformal lift");
    }
  lift.field = x;
  return lift;
}

std::string PseudogroupElement::to_string() const {
  Expr d = Expr(mpq_class(alpha * alpha)) * Expr::t() + Expr(beta);
  return "D = " + d.to_string() + ", A = " + A.to_string() + ", B = " + B.to_string() + ", C = " + C.to_string() +
         ", E = " + E.to_string();
}

namespace {

std::optional<Exp> small_exp(const mpq_class& q) {
  if (!q.get_num().fits_sint_p() || !q.get_den().fits_sint_p()) return std::nullopt;
  try {
    return Exp(q.get_num().get_si(), q.get_den().get_si());
  } catch (const Error&) {
    return std::nullopt;
  }
}

// c with e == c*b, or nullopt.
std::optional<mpq_class> linear_multiple(const Expr& e, Base b) {
  if (!e.is_polynomial() || e.num().size() != 1) return std::nullopt;
  Expr c = e / Expr::base(b);
  if (!c.is_constant()) return std::nullopt;
  return c.constant_value();
}

}  // namespace

Solution apply_pseudogroup(const PseudogroupElement& g, const Solution& s) {
  if (g.alpha <= 0) fail(ErrorKind::non_invertible_element, "D' must be positive");
  for (const Expr* f : {&g.A, &g.B, &g.C, &g.E})
    if (!function_of_t(*f)) fail(ErrorKind::invalid_argument, "A, B, C, E must be functions of t");
  if (g.E.is_zero() || (g.E.is_constant() && g.E.constant_value() <= 0))
    fail(ErrorKind::non_invertible_element, "E must be positive");

  const Symbol ts = Symbol::base(Base::t), xs = Symbol::base(Base::x), ys = Symbol::base(Base::y);
  const Expr t = Expr::t(), x = Expr::x(), y = Expr::y();
  const Expr alpha(g.alpha), alpha2(mpq_class(g.alpha * g.alpha));
  const bool time_fixed = g.alpha == 1 && g.beta == 0;
  const Expr tau = (t - Expr(g.beta)) / alpha2;

  Bindings at_tau;
  if (!time_fixed) {
    at_tau.emplace(ts, tau);
    if (g.beta == 0)
      if (auto q = small_exp(1 / (g.alpha * g.alpha))) at_tau.emplace(Symbol::exp_of(Base::t), Expr::exp_of(Base::t, *q));
  }
  auto at = [&](const Expr& f) { return time_fixed ? f : substitute(f, at_tau); };

  Expr E = at(g.E), E1 = at(dt(g.E)), E2 = at(dt(dt(g.E)));
  Expr A = at(g.A), A1 = at(dt(g.A)), B = at(g.B), B1 = at(dt(g.B)), C = at(g.C);
  Expr CE4 = at(dt(g.C / g.E.pow(Exp(4))));

  Expr eta = (y - B) / (alpha * E);
  Expr xi = (x - E * E1 * eta * eta - C * eta - A) / (E * E);

  Bindings inverse = at_tau;
  inverse[xs] = xi;
  inverse[ys] = eta;
  if (auto c = linear_multiple(eta, Base::y))
    if (auto q = small_exp(*c)) inverse.emplace(Symbol::exp_of(Base::y), Expr::exp_of(Base::y, *q));
  if (auto c = linear_multiple(xi, Base::x))
    if (auto q = small_exp(*c)) inverse.emplace(Symbol::exp_of(Base::x), Expr::exp_of(Base::x, *q));

  Expr u = substitute(s.u, inverse), v = substitute(s.v, inverse);
  Solution r;
  r.u = E / alpha * u - Expr(3L) * eta * E1 / alpha + B1 / alpha2 - Expr(2L) * C / (E * alpha);
  r.v = E * E / alpha2 * v + (C + Expr(2L) * E * E1 * eta) / alpha2 * u +
        (E * E2 - Expr(3L) * E1 * E1) / alpha2 * eta * eta + E.pow(Exp(4)) / alpha2 * CE4 * eta +
        Expr(2L) * E * E1 / alpha2 * xi + (E * E * A1 - C * C) / (alpha2 * E * E);
  if (s.domain.t_lower) r.domain.t_lower = g.alpha * g.alpha * *s.domain.t_lower + g.beta;
  r.domain.y_positive = s.domain.y_positive && g.B.is_zero();
  r.provenance = s.provenance + " transformed by " + g.to_string();
  return r;
}

std::array<Number, 3> pseudogroup_point(const PseudogroupElement& g, const std::array<mpq_class, 3>& p) {
  std::map<Symbol, Number> at{{Symbol::base(Base::t), Number(p[0])}};
  Number E = evaluate(g.E, at), E1 = evaluate(dt(g.E), at);
  Number A = evaluate(g.A, at), B = evaluate(g.B, at), C = evaluate(g.C, at);
  Number x(p[1]), y(p[2]);
  return {Number(mpq_class(g.alpha * g.alpha * p[0] + g.beta)), E * E * x + E * E1 * y * y + C * y + A,
          Number(g.alpha) * E * y + B};
}

JetPoint orbit_reference_point(int k) {
  JetPoint p;
  for (const JetVar& j : internal_jets(k, true)) p.internal[Symbol::jet(j)] = 0;
  p.internal[Symbol::jet(Dependent::u, 0, 1, 0)] = 1;
  if (k >= 2) p.internal[Symbol::jet(Dependent::u, 0, 2, 0)] = 1;
  return p;
}

int orbit_dimension(int k, const JetPoint& theta) {
  if (k < 0) fail(ErrorKind::invalid_argument, "order must be non-negative");
  int cap = std::max(kDefaultOrderCap, k);
  std::vector<JetVar> jets = internal_jets(k, true);
  const Expr f = Expr::formal("f");
  mpq_class t0 = theta.base[0];
  RationalMatrix rows;
  for (int family = 1; family <= 5; ++family) {
    Prolongation pr(symmetry_field(family, f), cap, true);
    std::vector<Expr> comps(pr.field().alpha.begin(), pr.field().alpha.end());
    for (const JetVar& j : jets) comps.push_back(pr.coefficient(j));
    int mmax = (family == 3 || family == 5) ? k : k + 1;
    for (int m = 0; m <= mmax; ++m) {
      // f = t^m / m!, so f^(n)(t0) = t0^(m-n) / (m-n)!.
      JetPoint p = theta;
      for (int n = 0; n <= mmax + 2; ++n) {
        mpq_class val = 0;
        if (n <= m) {
          mpz_class den = 1;
          for (int i = 2; i <= m - n; ++i) den *= i;
          mpq_class tp = 1;
          for (int i = 0; i < m - n; ++i) tp *= t0;
          val = tp / den;
        }
        p.formal[Symbol::formal("f", n)] = Number(val);
      }
      std::vector<mpq_class> row;
      Valuation val = p.valuation();
      for (const Expr& c : comps) {
        Number n = evaluate(c, val);
        if (!n.is_exact()) fail(ErrorKind::invalid_argument, "orbit point must be rational");
        row.push_back(n.rational());
      }
      rows.push_back(std::move(row));
    }
  }
  return rank(std::move(rows));
}

}  // namespace ewinv
