#pragma once

#include <array>
#include <mutex>
#include <string>
#include <unordered_map>

#include "ewinv/jet.hpp"

namespace ewinv {

/// Vector field alpha^t d_t + alpha^x d_x + alpha^y d_y + phi^u d_u + phi^v d_v
/// on E, with coefficients in t, x, y, u, v and formal functions of t.
struct PointField {
  std::array<Expr, 3> alpha;
  Expr phi_u;
  Expr phi_v;

  const Expr& base(Base b) const { return alpha[std::size_t(b)]; }

  /// Applies the field to a function on E.
  Expr apply(const Expr& f) const;
  bool is_zero() const;
  std::string to_string() const;

  friend PointField operator+(const PointField& a, const PointField& b);
  friend PointField operator-(const PointField& a, const PointField& b);
  friend PointField operator*(const Expr& c, const PointField& a);
  friend bool operator==(const PointField& a, const PointField& b);
};

struct GeneratingSection {
  Expr phi_u;
  Expr phi_v;
};

/// (omega_u(X), omega_v(X)) with omega_u = du - u_t dt - u_x dx - u_y dy.
GeneratingSection generating_section(const PointField& x);

PointField lie_bracket(const PointField& a, const PointField& b);

/// Prolongation of a point field with lazily computed jet coefficients.
/// With `on_equation` every coefficient is reduced on the equation.
class Prolongation {
 public:
  Prolongation(PointField field, int order_cap = kDefaultOrderCap, bool on_equation = true);

  const PointField& field() const { return field_; }
  /// Coefficient of d/d(u_sigma) or d/d(v_sigma).
  Expr coefficient(const JetVar& j) const;
  /// Lie derivative of a jet expression of order <= order cap.
  Expr apply(const Expr& e) const;

 private:
  PointField field_;
  int order_cap_;
  bool on_equation_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint32_t, Expr> cache_;
};

/// Coefficient of d/d(u_sigma) from D_sigma(phi) + alpha^i u_{sigma i}
/// without reduction.
Expr prolongation_coefficient_direct(const PointField& x, const JetVar& j, int order_cap = kDefaultOrderCap);

/// L_{X^(k)} e, reduced on the equation when `on_equation`.
Expr lie_derivative(const PointField& x, const Expr& e, int k = kDefaultOrderCap, bool on_equation = true);

}  // namespace ewinv
