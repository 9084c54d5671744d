#include "ewinv/jet.hpp"

#include <mutex>
#include <unordered_map>

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

Symbol jet_symbol(const JetVar& j) { return Symbol::jet(j); }

void order_error(int order, int cap) {
  fail(ErrorKind::order_cap_exceeded,
       "jet order " + std::to_string(order) + " exceeds the order cap " + std::to_string(cap));
}

}  // namespace

Expr jet_expr(Dependent d, const MultiIndex& sigma) { return Expr(Symbol::jet(JetVar{d, sigma})); }

Expr jet_expr(const JetVar& j) { return Expr(jet_symbol(j)); }

bool is_principal(const JetVar& j) { return j.is_principal(); }

Expr total_derivative(const Expr& e, Base dir, int order_cap) {
  Poly one(mpq_class(1));
  std::unordered_map<Symbol, Poly> cache;
  Symbol b = Symbol::base(dir);
  Symbol ea = Symbol::exp_of(dir);
  return derive(e, [&](Symbol s) -> const Poly* {
    if (s == b) return &one;
    if (s.is_base()) return nullptr;
    if (s.is_exp()) {
      if (s != ea) return nullptr;
    } else if (s.is_formal()) {
      if (dir != Base::t) return nullptr;
    }
    auto it = cache.find(s);
    if (it != cache.end()) return &it->second;
    Poly image;
    if (s.is_exp()) {
      image = Poly(s);
    } else if (s.is_formal()) {
      image = Poly(s.formal_derivative());
    } else {
      JetVar j = s.jet_var();
      if (j.order() + 1 > order_cap) order_error(j.order() + 1, order_cap);
      image = Poly(jet_symbol(j.plus(dir)));
    }
    return &cache.emplace(s, std::move(image)).first->second;
  });
}

Expr total_derivative(const Expr& e, const MultiIndex& sigma, int order_cap) {
  Expr r = e;
  for (Base b : kBases)
    for (int i = 0; i < sigma.count(b); ++i) r = total_derivative(r, b, order_cap);
  return r;
}

const Expr& ms_f1() {
  static const Expr f1 = [] {
    Expr u = Expr::jet(Dependent::u, 0, 0, 0), v = Expr::jet(Dependent::v, 0, 0, 0);
    Expr ut = Expr::jet(Dependent::u, 1, 0, 0), ux = Expr::jet(Dependent::u, 0, 1, 0);
    Expr uy = Expr::jet(Dependent::u, 0, 0, 1);
    return total_derivative(ut + u * uy + v * ux, Base::x) - total_derivative(uy, Base::y);
  }();
  return f1;
}

const Expr& ms_f2() {
  static const Expr f2 = [] {
    Expr u = Expr::jet(Dependent::u, 0, 0, 0), v = Expr::jet(Dependent::v, 0, 0, 0);
    Expr vt = Expr::jet(Dependent::v, 1, 0, 0), vx = Expr::jet(Dependent::v, 0, 1, 0);
    Expr vy = Expr::jet(Dependent::v, 0, 0, 1);
    return total_derivative(vt + v * vx - u * vy, Base::x) -
           total_derivative(vy - Expr(2L) * u * vx, Base::y);
  }();
  return f2;
}

const PrincipalSolution& principal_solve() {
  static const PrincipalSolution sol = [] {
    Expr utx = Expr::jet(Dependent::u, 1, 1, 0), vtx = Expr::jet(Dependent::v, 1, 1, 0);
    // Both equations are monic in their principal term.
    return PrincipalSolution{utx - ms_f1(), vtx - ms_f2()};
  }();
  return sol;
}

namespace {

// Principal coordinates are reduced by induction on the number of t's:
// u_{sigma y} = D_y(u_sigma) keeps internal coordinates internal, and
// D_x, D_t of a reduced expression only reintroduce principal coordinates
// with fewer t's or lower order.
struct ReductionCache {
  std::mutex mutex;
  std::unordered_map<std::uint32_t, Expr> values;
};

ReductionCache& reduction_cache() {
  static ReductionCache cache;
  return cache;
}

Expr compute_reduced(const JetVar& j, int order_cap);

Expr reduce_impl(const Expr& e, int order_cap) {
  Bindings b;
  for (Symbol s : e.symbols()) {
    if (!s.is_jet()) continue;
    JetVar j = s.jet_var();
    if (j.is_principal()) b.emplace(s, reduced_principal(j, order_cap));
  }
  return substitute(e, b);
}

Expr compute_reduced(const JetVar& j, int order_cap) {
  const MultiIndex& s = j.index;
  if (s.t == 1 && s.x == 1 && s.y == 0)
    return j.dep == Dependent::u ? principal_solve().r_u : principal_solve().r_v;
  if (s.y > 0) {
    JetVar lower{j.dep, s.minus(Base::y)};
    return total_derivative(reduced_principal(lower, order_cap), Base::y, order_cap);
  }
  if (s.x > 1) {
    JetVar lower{j.dep, s.minus(Base::x)};
    return reduce_impl(total_derivative(reduced_principal(lower, order_cap), Base::x, order_cap),
                       order_cap);
  }
  JetVar lower{j.dep, s.minus(Base::t)};
  return reduce_impl(total_derivative(reduced_principal(lower, order_cap), Base::t, order_cap),
                     order_cap);
}

}  // namespace

const Expr& reduced_principal(const JetVar& j, int order_cap) {
  if (!j.is_principal()) fail(ErrorKind::invalid_argument, jet_name(j) + " is not principal");
  if (j.order() > order_cap) order_error(j.order(), order_cap);
  ReductionCache& cache = reduction_cache();
  std::uint32_t key = Symbol::jet(j).id();
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.values.find(key);
    if (it != cache.values.end()) return it->second;
  }
  Expr value = compute_reduced(j, order_cap);
  std::lock_guard<std::mutex> lock(cache.mutex);
  // unordered_map references stay valid across rehashing.
  return cache.values.emplace(key, std::move(value)).first->second;
}

Expr reduce_on_equation(const Expr& e, int order_cap) {
  int order = e.jet_order();
  if (order > order_cap) order_error(order, order_cap);
  return reduce_impl(e, order_cap);
}

Dims dims(int k) {
  if (k < 0) fail(ErrorKind::invalid_argument, "order must be non-negative");
  Dims d;
  d.k = k;
  long kk = k;
  d.dim_jet = 3 + 2 * ((kk + 3) * (kk + 2) * (kk + 1) / 6);
  d.n_internal = (kk + 1) * (kk + 1);
  d.dim_equation = 3 + 2 * d.n_internal;
  return d;
}

std::vector<JetVar> internal_jets(int k, bool with_order_zero) {
  std::vector<JetVar> out;
  for (Dependent dep : {Dependent::u, Dependent::v}) {
    for (int order = with_order_zero ? 0 : 1; order <= k; ++order) {
      for (int a = order; a >= 0; --a) {
        for (int b = order - a; b >= 0; --b) {
          int c = order - a - b;
          if (a > 0 && b > 0) continue;
          out.push_back(JetVar{dep, MultiIndex{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c)}});
        }
      }
    }
  }
  return out;
}

Number JetPoint::value(Symbol s) const {
  if (s.is_base()) return Number(base[std::size_t(s.base_var())]);
  if (s.is_jet()) {
    JetVar j = s.jet_var();
    if (j.is_principal()) return evaluate(reduced_principal(j, std::max(kDefaultOrderCap, j.order())), valuation());
    auto it = internal.find(s);
    if (it == internal.end()) fail(ErrorKind::unbound_symbol, "unbound jet " + s.to_string());
    return Number(it->second);
  }
  if (s.is_formal()) {
    auto it = formal.find(s);
    if (it == formal.end()) fail(ErrorKind::unbound_symbol, "unbound formal function " + s.to_string());
    return it->second;
  }
  fail(ErrorKind::unbound_symbol, "unbound symbol " + s.to_string());
}

Valuation JetPoint::valuation() const {
  return [this](Symbol s) { return value(s); };
}

JetPoint random_jet_point(int k, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  JetPoint p;
  for (auto& b : p.base) {
    b = mpq_class(num(rng), den(rng));
    b.canonicalize();
  }
  for (const JetVar& j : internal_jets(k)) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    if (q == 0) q = 1;
    p.internal[Symbol::jet(j)] = q;
  }
  return p;
}

Number evaluate_on_equation(const Expr& e, const JetPoint& p) {
  return evaluate(reduce_on_equation(e, std::max(kDefaultOrderCap, e.jet_order())), p.valuation());
}

}  // namespace ewinv
