#include "ewinv/geometry.hpp"

#include <cctype>
#include <random>

#include "ewinv/dsl.hpp"
#include "ewinv/error.hpp"
#include "ewinv/jet.hpp"

namespace ewinv {

namespace {

const Expr kHalf(mpq_class(1, 2));

bool is_zero(const Matrix3& m) {
  for (const auto& row : m)
    for (const Expr& e : row)
      if (!e.is_zero()) return false;
  return true;
}

Expr det3(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Float abs_float(const Number& n) { return abs(n.to_float()); }

}  // namespace

WeylPair build_pair(const Solution& s) {
  const Expr& u = s.u;
  const Expr& v = s.v;
  WeylPair p;
  p.g[0][0] = -(u * u + Expr(4L) * v);
  p.g[0][1] = p.g[1][0] = Expr(2L);
  p.g[0][2] = p.g[2][0] = u;
  p.g[2][2] = Expr(-1L);
  Expr ux = partial(u, Base::x), uy = partial(u, Base::y), vx = partial(v, Base::x);
  p.omega = {u * ux + Expr(2L) * uy + Expr(4L) * vx, Expr(), -ux};
  return p;
}

Matrix3 inverse_metric(const Matrix3& g) {
  Expr det = det3(g);
  if (det.is_zero()) fail(ErrorKind::degenerate_metric, "the metric is degenerate");
  Matrix3 inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[std::size_t(i)][std::size_t(j)] =
          (g[std::size_t(r0)][std::size_t(c0)] * g[std::size_t(r1)][std::size_t(c1)] -
           g[std::size_t(r0)][std::size_t(c1)] * g[std::size_t(r1)][std::size_t(c0)]) /
          det;
    }
  return inv;
}

Christoffel levi_civita(const Matrix3& g) {
  Matrix3 gi = inverse_metric(g);
  // dg[l][i][j] = d_l g_ij
  std::array<Matrix3, 3> dg;
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) dg[l][i][j] = partial(g[i][j], kBases[l]);
  Christoffel c;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) {
        Expr s;
        for (std::size_t l = 0; l < 3; ++l)
          if (!gi[k][l].is_zero()) s += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        c[k][i][j] = c[k][j][i] = kHalf * s;
      }
  return c;
}

Christoffel weyl_connection(const WeylPair& p, CorrectionSign sign) {
  Christoffel c = levi_civita(p.g);
  Matrix3 gi = inverse_metric(p.g);
  Vector3 sharp;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) sharp[k] += gi[k][l] * p.omega[l];
  Expr factor = sign == CorrectionSign::minus ? -kHalf : kHalf;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Expr corr = -p.g[i][j] * sharp[k];
        if (j == k) corr += p.omega[i];
        if (i == k) corr += p.omega[j];
        c[k][i][j] += factor * corr;
      }
  return c;
}

std::array<Matrix3, 3> nonmetricity_residual(const WeylPair& p, const Christoffel& c) {
  std::array<Matrix3, 3> r;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Expr e = partial(p.g[i][j], kBases[k]);
        for (std::size_t l = 0; l < 3; ++l) e -= c[l][k][i] * p.g[l][j] + c[l][k][j] * p.g[i][l];
        r[k][i][j] = e - p.omega[k] * p.g[i][j];
      }
  return r;
}

Matrix3 ricci(const Christoffel& c) {
  // dc[i][l][j][k] = d_i Gamma^l_jk
  std::array<Christoffel, 3> dc;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t l = 0; l < 3; ++l)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) dc[i][l][j][k] = partial(c[l][j][k], kBases[i]);
  Matrix3 ric;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      Expr s;
      for (std::size_t l = 0; l < 3; ++l) {
        s += dc[l][l][a][b] - dc[a][l][l][b];
        for (std::size_t m = 0; m < 3; ++m) s += c[l][l][m] * c[m][a][b] - c[l][a][m] * c[m][l][b];
      }
      ric[a][b] = s;
    }
  return ric;
}

Matrix3 symmetric_part(const Matrix3& m) {
  Matrix3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = kHalf * (m[i][j] + m[j][i]);
  return r;
}

Matrix3 skew_part(const Matrix3& m) {
  Matrix3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = kHalf * (m[i][j] - m[j][i]);
  return r;
}

Matrix3 exterior_derivative(const Vector3& w) {
  Matrix3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = kHalf * (partial(w[j], kBases[i]) - partial(w[i], kBases[j]));
  return r;
}

Expr einstein_factor(const Matrix3& g, const Matrix3& ric_sym) {
  Matrix3 gi = inverse_metric(g);
  Expr tr;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (!gi[i][j].is_zero()) tr += gi[i][j] * ric_sym[j][i];
  return tr * Expr(mpq_class(1, 3));
}

bool GeometryReport::ms_ok() const { return ms_residual1.is_zero() && ms_residual2.is_zero(); }

bool GeometryReport::nonmetricity_ok() const {
  return ewinv::is_zero(nonmetricity[0]) && ewinv::is_zero(nonmetricity[1]) && ewinv::is_zero(nonmetricity[2]);
}

bool GeometryReport::skew_ok() const { return ewinv::is_zero(skew_residual); }

bool GeometryReport::ew_ok() const { return ewinv::is_zero(ew_residual); }

GeometryReport analyze(const Solution& s, CorrectionSign sign) {
  GeometryReport r;
  r.ms_residual1 = restrict_to_section(ms_f1(), s);
  r.ms_residual2 = restrict_to_section(ms_f2(), s);
  WeylPair p = build_pair(s);
  Christoffel c = weyl_connection(p, sign);
  r.nonmetricity = nonmetricity_residual(p, c);
  Matrix3 ric = ricci(c);
  Matrix3 sym = symmetric_part(ric), skew = skew_part(ric), dw = exterior_derivative(p.omega);
  r.lambda = einstein_factor(p.g, sym);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      r.skew_residual[i][j] = skew[i][j] - Expr(mpq_class(3, 2)) * dw[i][j];
      r.ew_residual[i][j] = sym[i][j] - r.lambda * p.g[i][j];
    }
  return r;
}

std::map<Symbol, Number> SamplePoint::valuation() const {
  std::map<Symbol, Number> m = formal;
  for (Base b : kBases) m[Symbol::base(b)] = Number(base[std::size_t(b)]);
  return m;
}

namespace {

mpq_class halton(std::uint64_t index, unsigned base) {
  mpq_class r = 0, f(1, base);
  while (index > 0) {
    r += f * mpq_class(long(index % base));
    index /= base;
    f /= base;
  }
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<SamplePoint> sample_points(const Domain& d, const std::set<Symbol>& formal_symbols, std::size_t n,
                                       std::uint64_t seed) {
  std::set<std::string> names;
  for (Symbol s : formal_symbols)
    if (s.is_formal()) names.insert(s.formal_name());
  std::vector<SamplePoint> pts;
  std::uint64_t start = 1 + seed * 7919;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t idx = start + i;
    SamplePoint p;
    mpq_class ht = halton(idx, 2), hx = halton(idx, 3), hy = halton(idx, 5);
    p.base[0] = d.t_lower ? mpq_class(*d.t_lower + 2 * ht) : mpq_class(2 * ht - 1);
    p.base[1] = 2 * hx - 1;
    p.base[2] = d.y_positive ? mpq_class(2 * hy) : mpq_class(2 * hy - 1);
    for (auto& b : p.base) b.canonicalize();
    std::mt19937_64 rng(seed * 1000003 + idx);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
    for (const std::string& name : names)
      for (int k = 0; k <= 8; ++k) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        p.formal[Symbol::formal(name, k)] = Number(q);
      }
    pts.push_back(std::move(p));
  }
  return pts;
}

bool EwCheck::passed() const {
  if (points.empty()) return false;
  for (const auto& p : points)
    if (!p.passed) return false;
  return true;
}

Number EwCheck::max_ew_residual() const {
  Number m(0L);
  for (const auto& p : points)
    if (abs_float(p.ew_residual) > abs_float(m)) m = p.ew_residual;
  return m;
}

Number EwCheck::max_ms_residual() const {
  Number m(0L);
  for (const auto& p : points)
    if (abs_float(p.ms_residual) > abs_float(m)) m = p.ms_residual;
  return m;
}

namespace {

using NumMatrix = std::array<std::array<Number, 3>, 3>;

NumMatrix eval_matrix(const Matrix3& m, const std::map<Symbol, Number>& at) {
  NumMatrix r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = evaluate(m[i][j], at);
  return r;
}

Number max_abs(const NumMatrix& m) {
  Number best(0L);
  for (const auto& row : m)
    for (const Number& x : row)
      if (abs_float(x) > abs_float(best)) best = x.abs();
  return best;
}

// |a - b| / (|a| + |b| + 1), exact when all entries are.
Number relative_difference(const NumMatrix& a, const NumMatrix& b) {
  NumMatrix d;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) d[i][j] = a[i][j] - b[i][j];
  return max_abs(d) / (max_abs(a) + max_abs(b) + Number(1L));
}

bool within(const Number& n, double tol) {
  if (n.is_exact()) return n.is_zero();
  return abs_float(n) <= Float(tol);
}

}  // namespace

EwCheck check_EW(const Solution& s, const std::vector<SamplePoint>& pts, double tol, CorrectionSign sign) {
  EwCheck out;
  out.tol = tol;
  WeylPair p = build_pair(s);
  Matrix3 gi = inverse_metric(p.g);
  Christoffel c = weyl_connection(p, sign);
  Matrix3 ric = ricci(c);
  Matrix3 sym = symmetric_part(ric), skew = skew_part(ric), dw = exterior_derivative(p.omega);
  Expr f1 = restrict_to_section(ms_f1(), s), f2 = restrict_to_section(ms_f2(), s);
  for (const SamplePoint& pt : pts) {
    if (!s.domain.contains(pt.base[0], pt.base[2]))
      fail(ErrorKind::domain_violation, "sample point outside the solution domain");
    auto at = pt.valuation();
    PointCheck pc;
    pc.point = pt;
    Number r1 = evaluate(f1, at).abs(), r2 = evaluate(f2, at).abs();
    pc.ms_residual = abs_float(r1) > abs_float(r2) ? r1 : r2;
    NumMatrix g = eval_matrix(p.g, at), gin = eval_matrix(gi, at), rs = eval_matrix(sym, at);
    Number tr(0L);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) tr = tr + gin[i][j] * rs[j][i];
    pc.lambda = tr / Number(3L);
    NumMatrix lg, w32;
    NumMatrix sk = eval_matrix(skew, at), dwn = eval_matrix(dw, at);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        lg[i][j] = pc.lambda * g[i][j];
        w32[i][j] = Number(mpq_class(3, 2)) * dwn[i][j];
      }
    pc.ew_residual = relative_difference(rs, lg);
    pc.skew_residual = relative_difference(sk, w32);
    pc.passed = within(pc.ms_residual, tol) && within(pc.ew_residual, tol) && within(pc.skew_residual, tol);
    out.points.push_back(std::move(pc));
  }
  return out;
}

CanonicalFrame canonical_frame(const WeylPair& p, const SamplePoint& pt) {
  CanonicalFrame fr;
  auto at = pt.valuation();
  Matrix3 gi_sym = inverse_metric(p.g);
  // F = d omega as the full antisymmetric matrix d_i w_j - d_j w_i
  Matrix3 F = exterior_derivative(p.omega);
  for (auto& row : F)
    for (Expr& e : row) e = Expr(2L) * e;
  // N = |F|^2_g = 1/2 F_ij F^ij
  Expr N;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
          if (!gi_sym[i][a].is_zero() && !gi_sym[j][b].is_zero())
            N += kHalf * gi_sym[i][a] * gi_sym[j][b] * F[i][j] * F[a][b];
  NumMatrix g = eval_matrix(p.g, at), gi = eval_matrix(gi_sym, at), Fn = eval_matrix(F, at);
  Number n = evaluate(N, at);
  fr.norm = n;
  bool dw_zero = true;
  for (const auto& row : Fn)
    for (const Number& x : row)
      if (!x.is_zero()) dw_zero = false;
  if (dw_zero) {
    fr.degeneracy = "d omega vanishes";
    return fr;
  }
  if (n.is_zero()) {
    fr.degeneracy = "d omega is null";
    return fr;
  }
  // Rescale g' = lambda g with lambda = sqrt|N|, so |d omega|_{g'} = 1 and
  // omega' = omega + dN / (2N).
  Number lambda = n.abs().pow(Exp(1, 2));
  std::array<Number, 3> w;
  for (std::size_t i = 0; i < 3; ++i)
    w[i] = evaluate(p.omega[i], at) + evaluate(partial(N, kBases[i]), at) / (Number(2L) * n);
  auto gdot = [&](const std::array<Number, 3>& a, const std::array<Number, 3>& b) {
    Number s(0L);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) s = s + lambda * g[i][j] * a[i] * b[j];
    return s;
  };
  std::array<Number, 3> k = {Fn[1][2], Fn[2][0], Fn[0][1]};
  Number wk = w[0] * k[0] + w[1] * k[1] + w[2] * k[2];
  if (wk.is_zero()) {
    fr.degeneracy = "omega vanishes on ker d omega";
    return fr;
  }
  std::array<Number, 3> e1;
  for (std::size_t i = 0; i < 3; ++i) e1[i] = k[i] / wk;
  Number e11 = gdot(e1, e1);
  if (e11.is_zero()) {
    fr.degeneracy = "ker d omega is null";
    return fr;
  }
  std::array<Number, 3> sharp, e2, e3;
  for (std::size_t i = 0; i < 3; ++i) {
    sharp[i] = Number(0L);
    for (std::size_t j = 0; j < 3; ++j) sharp[i] = sharp[i] + gi[i][j] * w[j] / lambda;
  }
  Number proj = gdot(sharp, e1) / e11;
  for (std::size_t i = 0; i < 3; ++i) e2[i] = sharp[i] - proj * e1[i];
  auto J = [&](const std::array<Number, 3>& a) {
    std::array<Number, 3> r;
    for (std::size_t i = 0; i < 3; ++i) {
      r[i] = Number(0L);
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t l = 0; l < 3; ++l) r[i] = r[i] + gi[i][j] * Fn[j][l] * a[l] / lambda;
    }
    return r;
  };
  e3 = J(e2);
  Number e22 = gdot(e2, e2);
  if (e22.is_zero()) {
    fr.degeneracy = "the projection of omega is null";
    return fr;
  }
  fr.j_square = gdot(J(e3), e2) / e22;
  fr.e = {e1, e2, e3};
  return fr;
}

std::vector<std::string> catalog_ids() {
  return {"trivial", "dkp-partial", "hierarchy", "exp-family", "sl2-family", "sl2-degenerate"};
}

namespace {

Expr P(const std::string& s) {
  ParseOptions o;
  o.allow_jets = false;
  return parse_expr(s, o);
}

Expr integrate_y(const Expr& e) {
  if (!e.is_polynomial()) fail(ErrorKind::non_representable, "integrand is not polynomial in y");
  Symbol y = Symbol::base(Base::y);
  std::vector<Term> terms;
  for (const Term& t : e.num().terms()) {
    Exp n = exponent_of(t.mono, y) + Exp(1);
    if (n == Exp(0)) fail(ErrorKind::non_representable, "integral of 1/y");
    terms.push_back({with_exponent(t.mono, y, n), t.coef / n.to_mpq()});
  }
  return Expr(Poly::from_terms(std::move(terms)));
}

Solution make(const Expr& u, const Expr& v, const std::string& provenance) {
  return {u, v, infer_domain(u, v), provenance};
}

}  // namespace

Expr hierarchy_potential() {
  Expr t = Expr::t(), x = Expr::x(), y = Expr::y();
  Expr p = t + y - y * y / (Expr(2L) * t);
  Expr py = partial(p, Base::y);
  Expr q = (p * p - py) / Expr(3L);
  Expr ry = (Expr(2L) * partial(p, Base::t) + Expr(2L) * q * py - partial(partial(q, Base::y), Base::y)) / Expr(6L);
  return x * x * x + p * x * x + q * x + integrate_y(ry);
}

Solution hierarchy_solution(const Expr& w) {
  Solution s = make(partial(w, Base::x), -partial(w, Base::y), "hierarchy(" + w.to_string() + ")");
  Domain d = infer_domain(w, Expr());
  if (d.t_lower) s.domain.t_lower = d.t_lower;
  if (d.y_positive) s.domain.y_positive = true;
  // poles of the potential at t = 0 or y = 0
  for (Symbol sym : w.den().symbols()) {
    if (sym == Symbol::base(Base::t)) s.domain.t_lower = mpq_class(0);
    if (sym == Symbol::base(Base::y)) s.domain.y_positive = true;
  }
  for (const Term& term : w.num().terms())
    for (const Factor& f : term.mono)
      if (f.sym.is_base() && f.exp.sign() < 0) {
        if (f.sym.base_var() == Base::t) s.domain.t_lower = mpq_class(0);
        if (f.sym.base_var() == Base::y) s.domain.y_positive = true;
      }
  return s;
}

Expr hierarchy_lhs(const Expr& w) {
  auto d = [&](const Expr& e, Base b) { return partial(e, b); };
  Expr wx = d(w, Base::x), wy = d(w, Base::y);
  return d(wx, Base::t) + wx * d(wx, Base::y) - wy * d(wx, Base::x) - d(wy, Base::y);
}

bool satisfies_hierarchy(const Expr& w) {
  for (Symbol s : hierarchy_lhs(w).symbols())
    if (!(s.is_formal() || ((s.is_base() || s.is_exp()) && s.base_var() == Base::t))) return false;
  return true;
}

Solution catalog(const std::string& id, const Expr& f, const Expr& h) {
  if (id == "trivial") return make(Expr(), Expr(), id);
  if (id == "dkp-partial") return make(Expr(), P("y^4/12 + x*y") + h, id);
  if (id == "exp-family") return make(P("x + exp(y)"), f + h * P("exp(-y)"), id);
  if (id == "sl2-family") {
    Solution s = make(P("y^(2/3) - (10/3)*x/y"),
                      P("(2/5)*x*y^(-1/3) - (7/3)*x^2/y^2 + (21/25)*y^(4/3)") +
                          (f * P("y^(1/3)") + h) * P("y^2"),
                      id);
    s.domain.y_positive = true;
    return s;
  }
  if (id == "sl2-degenerate") {
    Solution s = make(P("-(10/3)*x/y"), P("-(7/3)*x^2/y^2") + (f * P("y^(1/3)") + h) * P("y^2"), id);
    s.domain.y_positive = true;
    return s;
  }
  if (id == "hierarchy") {
    Solution s = hierarchy_solution(hierarchy_potential());
    s.provenance = id;
    return s;
  }
  fail(ErrorKind::unknown_id, "unknown catalog id '" + id + "'");
}

Solution parse_catalog_id(const std::string& text) {
  auto open = text.find('(');
  std::string id = text.substr(0, open);
  while (!id.empty() && std::isspace(static_cast<unsigned char>(id.back()))) id.pop_back();
  if (open == std::string::npos) return catalog(id);
  if (text.back() != ')') fail(ErrorKind::syntax_error, "expected ')' at the end of '" + text + "'");
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string> args;
  int depth = 0;
  std::string cur;
  for (char ch : inner) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  args.push_back(cur);
  if (id == "hierarchy") {
    if (args.size() != 1) fail(ErrorKind::invalid_argument, "hierarchy takes one potential");
    Solution s = hierarchy_solution(P(args[0]));
    return s;
  }
  if (args.size() != 2) fail(ErrorKind::invalid_argument, id + " takes two parameters f, h");
  Solution s = catalog(id, P(args[0]), P(args[1]));
  s.provenance = text;
  return s;
}

HierarchyCheck hierarchy_identity() {
  ParseOptions o;
  o.allow_w = true;
  Expr F = parse_expr("w_tx + w_x*w_xy - w_y*w_xx - w_yy", o);
  Bindings b;
  for (Symbol s : (ms_f1() + ms_f2()).symbols()) {
    if (!s.is_jet()) continue;
    JetVar j = s.jet_var();
    JetVar wj{Dependent::w, j.index};
    if (j.dep == Dependent::u) b.emplace(s, Expr(Symbol::jet(wj.plus(Base::x))));
    else b.emplace(s, -Expr(Symbol::jet(wj.plus(Base::y))));
  }
  return {substitute(ms_f1(), b) - total_derivative(F, Base::x),
          substitute(ms_f2(), b) + total_derivative(F, Base::y)};
}

Expr dkp_residual() {
  Bindings b;
  for (Symbol s : ms_f2().symbols())
    if (s.is_jet() && s.jet_var().dep == Dependent::u) b.emplace(s, Expr());
  return substitute(ms_f2(), b) - parse_expr("v_tx + v_x^2 + v*v_xx - v_yy");
}

}  // namespace ewinv
