#pragma once

#include <optional>
#include <string>

#include "ewinv/jet.hpp"

namespace ewinv {

/// Open region of (t, x, y) where a section is defined.
struct Domain {
  std::optional<mpq_class> t_lower;  // t > t_lower
  bool y_positive = false;

  bool contains(const mpq_class& t, const mpq_class& y) const {
    return (!t_lower || t > *t_lower) && (!y_positive || y > 0);
  }
  std::string to_string() const;
};

/// Section u = u(t,x,y), v = v(t,x,y) of E -> M.
struct Solution {
  Expr u;
  Expr v;
  Domain domain;
  std::string provenance;
};

/// Domain implied by the expressions: y > 0 when a fractional power of y
/// occurs, t > 0 likewise for t.
Domain infer_domain(const Expr& u, const Expr& v);

/// Jet value u_sigma or v_sigma of the section as an expression in t, x, y.
Expr section_jet(const Solution& s, const JetVar& j);

/// Substitutes the section's jets into a jet expression.
Expr restrict_to_section(const Expr& e, const Solution& s);

}  // namespace ewinv
