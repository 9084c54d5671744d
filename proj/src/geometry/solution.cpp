#include "ewinv/solution.hpp"

#include "ewinv/error.hpp"
#include "ewinv/jet.hpp"

namespace ewinv {

namespace {

void scan(const Poly& p, Domain& d) {
  for (const Term& term : p.terms())
    for (const Factor& f : term.mono) {
      if (!f.sym.is_base() || f.exp.is_integer()) continue;
      if (f.sym.base_var() == Base::y) d.y_positive = true;
      if (f.sym.base_var() == Base::t) d.t_lower = mpq_class(0);
    }
}

}  // namespace

std::string Domain::to_string() const {
  std::string s;
  if (t_lower) s = "t > " + rational_to_string(*t_lower);
  if (y_positive) s += std::string(s.empty() ? "" : ", ") + "y > 0";
  return s.empty() ? "all (t, x, y)" : s;
}

Domain infer_domain(const Expr& u, const Expr& v) {
  Domain d;
  for (const Expr* e : {&u, &v}) {
    scan(e->num(), d);
    scan(e->den(), d);
  }
  return d;
}

Expr section_jet(const Solution& s, const JetVar& j) {
  if (j.dep == Dependent::w) fail(ErrorKind::invalid_argument, "sections have no w component");
  Expr r = j.dep == Dependent::u ? s.u : s.v;
  for (Base b : kBases)
    for (int i = 0; i < j.index.count(b); ++i) r = partial(r, b);
  return r;
}

Expr restrict_to_section(const Expr& e, const Solution& s) {
  Bindings b;
  for (Symbol sym : e.symbols())
    if (sym.is_jet()) b.emplace(sym, section_jet(s, sym.jet_var()));
  return substitute(e, b);
}

}  // namespace ewinv
