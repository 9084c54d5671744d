#include "ewinv/fields.hpp"

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

const Symbol kU = Symbol::jet(Dependent::u, 0, 0, 0);
const Symbol kV = Symbol::jet(Dependent::v, 0, 0, 0);

}  // namespace

Expr PointField::apply(const Expr& f) const {
  Expr r;
  for (Base b : kBases)
    if (!base(b).is_zero()) r += base(b) * partial(f, b);
  if (!phi_u.is_zero()) r += phi_u * partial(f, kU);
  if (!phi_v.is_zero()) r += phi_v * partial(f, kV);
  return r;
}

bool PointField::is_zero() const {
  return alpha[0].is_zero() && alpha[1].is_zero() && alpha[2].is_zero() && phi_u.is_zero() &&
         phi_v.is_zero();
}

std::string PointField::to_string() const {
  static const char* names[] = {"d_t", "d_x", "d_y", "d_u", "d_v"};
  const Expr* c[] = {&alpha[0], &alpha[1], &alpha[2], &phi_u, &phi_v};
  std::string s;
  for (int i = 0; i < 5; ++i) {
    if (c[i]->is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c[i]->to_string() + ")*" + names[i];
  }
  return s.empty() ? "0" : s;
}

PointField operator+(const PointField& a, const PointField& b) {
  return {{a.alpha[0] + b.alpha[0], a.alpha[1] + b.alpha[1], a.alpha[2] + b.alpha[2]},
          a.phi_u + b.phi_u,
          a.phi_v + b.phi_v};
}

PointField operator-(const PointField& a, const PointField& b) {
  return {{a.alpha[0] - b.alpha[0], a.alpha[1] - b.alpha[1], a.alpha[2] - b.alpha[2]},
          a.phi_u - b.phi_u,
          a.phi_v - b.phi_v};
}

PointField operator*(const Expr& c, const PointField& a) {
  return {{c * a.alpha[0], c * a.alpha[1], c * a.alpha[2]}, c * a.phi_u, c * a.phi_v};
}

bool operator==(const PointField& a, const PointField& b) {
  return a.alpha == b.alpha && a.phi_u == b.phi_u && a.phi_v == b.phi_v;
}

GeneratingSection generating_section(const PointField& x) {
  GeneratingSection g{x.phi_u, x.phi_v};
  for (Base b : kBases) {
    MultiIndex s = MultiIndex{}.plus(b);
    g.phi_u -= x.base(b) * jet_expr(Dependent::u, s);
    g.phi_v -= x.base(b) * jet_expr(Dependent::v, s);
  }
  return g;
}

PointField lie_bracket(const PointField& a, const PointField& b) {
  PointField r;
  for (std::size_t i = 0; i < 3; ++i) r.alpha[i] = a.apply(b.alpha[i]) - b.apply(a.alpha[i]);
  r.phi_u = a.apply(b.phi_u) - b.apply(a.phi_u);
  r.phi_v = a.apply(b.phi_v) - b.apply(a.phi_v);
  return r;
}

Prolongation::Prolongation(PointField field, int order_cap, bool on_equation)
    : field_(std::move(field)), order_cap_(order_cap), on_equation_(on_equation) {
  for (const Expr* c : {&field_.alpha[0], &field_.alpha[1], &field_.alpha[2], &field_.phi_u, &field_.phi_v})
    if (c->jet_order() > 0)
      fail(ErrorKind::invalid_argument, "point field coefficients may not contain jets of positive order");
}

Expr Prolongation::coefficient(const JetVar& j) const {
  if (j.dep == Dependent::w) fail(ErrorKind::invalid_argument, "the field does not act on w");
  if (j.order() > order_cap_)
    fail(ErrorKind::order_cap_exceeded, "prolongation order " + std::to_string(j.order()) +
                                            " exceeds the order cap " + std::to_string(order_cap_));
  if (j.order() == 0) return j.dep == Dependent::u ? field_.phi_u : field_.phi_v;
  std::uint32_t key = Symbol::jet(j).id();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  // c_{sigma i} = D_i(c_sigma) - sum_k D_i(alpha^k) u_{sigma k}
  Base dir = j.index.y > 0 ? Base::y : (j.index.x > 0 ? Base::x : Base::t);
  JetVar lower{j.dep, j.index.minus(dir)};
  Expr c = total_derivative(coefficient(lower), dir, order_cap_);
  for (Base k : kBases) {
    Expr da = total_derivative(field_.base(k), dir, order_cap_);
    if (!da.is_zero()) c -= da * jet_expr(lower.plus(k));
  }
  if (on_equation_) c = reduce_on_equation(c, order_cap_);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(key, std::move(c)).first->second;
}

Expr Prolongation::apply(const Expr& e) const {
  Expr r;
  for (Base b : kBases)
    if (!field_.base(b).is_zero()) r += field_.base(b) * partial(e, b);
  for (Symbol s : e.symbols()) {
    if (!s.is_jet()) continue;
    Expr d = partial(e, s);
    if (d.is_zero()) continue;
    Expr c = coefficient(s.jet_var());
    if (!c.is_zero()) r += c * d;
  }
  if (on_equation_) r = reduce_on_equation(r, order_cap_);
  return r;
}

Expr prolongation_coefficient_direct(const PointField& x, const JetVar& j, int order_cap) {
  GeneratingSection g = generating_section(x);
  Expr c = total_derivative(j.dep == Dependent::u ? g.phi_u : g.phi_v, j.index, order_cap + 1);
  for (Base b : kBases) c += x.base(b) * jet_expr(j.plus(b));
  return c;
}

Expr lie_derivative(const PointField& x, const Expr& e, int k, bool on_equation) {
  int cap = std::max(k, kDefaultOrderCap);
  if (e.jet_order() > k)
    fail(ErrorKind::order_cap_exceeded, "expression order exceeds the prolongation order");
  return Prolongation(x, cap, on_equation).apply(e);
}

}  // namespace ewinv
