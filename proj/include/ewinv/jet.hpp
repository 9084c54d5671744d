#pragma once

#include <array>
#include <map>
#include <random>
#include <vector>

#include "ewinv/expr.hpp"

namespace ewinv {

inline constexpr int kDefaultOrderCap = 4;

/// Total derivative D_i = d/dx^i + sum u_{sigma i} d/du_sigma + ...; acts on
/// formal functions and exponential atoms through their base variable.
/// Throws order_cap_exceeded when the result would exceed `order_cap`.
Expr total_derivative(const Expr& e, Base dir, int order_cap = kDefaultOrderCap);
/// Iterated total derivative D_sigma.
Expr total_derivative(const Expr& e, const MultiIndex& sigma, int order_cap = kDefaultOrderCap);

Expr jet_expr(Dependent d, const MultiIndex& sigma);
Expr jet_expr(const JetVar& j);

/// Principal: both a t and an x in the multi-index (u and v only).
bool is_principal(const JetVar& j);

/// Left-hand sides of the modified Manakov-Santini system.
const Expr& ms_f1();
const Expr& ms_f2();

struct PrincipalSolution {
  Expr r_u;  ///< u_tx on the equation
  Expr r_v;  ///< v_tx on the equation
};
const PrincipalSolution& principal_solve();

/// Expression of a principal coordinate in internal coordinates.
const Expr& reduced_principal(const JetVar& j, int order_cap = kDefaultOrderCap);

/// Restriction to the prolonged equation: eliminates every principal
/// coordinate. Throws order_cap_exceeded for orders above `order_cap`.
Expr reduce_on_equation(const Expr& e, int order_cap = kDefaultOrderCap);

struct Dims {
  int k = 0;
  long dim_jet = 0;       ///< dim J^k
  long dim_equation = 0;  ///< dim MS_k
  long n_internal = 0;    ///< internal coordinates per dependent variable
};
Dims dims(int k);

/// Internal jet coordinates of u and v of orders 1..k (order 0 included
/// when `with_order_zero`), ordered by dependent, order, then index.
std::vector<JetVar> internal_jets(int k, bool with_order_zero = true);

/// Point of the equation manifold: base point plus values of internal
/// coordinates. Principal coordinates are derived through the reduction.
struct JetPoint {
  std::array<mpq_class, 3> base{};
  std::map<Symbol, mpq_class> internal;
  std::map<Symbol, Number> formal;

  Number value(Symbol s) const;
  Valuation valuation() const;
};

/// Internal coordinates up to order k drawn uniformly from small rationals.
JetPoint random_jet_point(int k, std::mt19937& rng);

/// Evaluates at a jet point after reduction on the equation.
Number evaluate_on_equation(const Expr& e, const JetPoint& p);

}  // namespace ewinv
