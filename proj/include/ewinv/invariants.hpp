#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ewinv/jet.hpp"

namespace ewinv {

/// Second-order invariants I_1, I_2, I_3 (i = 1..3).
const Expr& invariant(int i);

/// c_t D_t + c_x D_x + c_y D_y; results are reduced on the equation.
struct InvariantDerivation {
  std::array<Expr, 3> coef;

  Expr apply(const Expr& e, int order_cap = kDefaultOrderCap) const;
};

/// nabla_1, nabla_2, nabla_3 (i = 1..3). Defined off u_x = 0, u_xx = 0.
const InvariantDerivation& derivation(int i);

Expr apply_derivation(int i, const Expr& e);

/// Structure coefficients K_1..K_4 of the derivation commutators.
const Expr& structure_K(int i);

/// I_1, I_2, I_3 followed by I_ij = nabla_j(I_i), row-major.
const std::vector<Expr>& basic_invariants();
std::vector<std::string> basic_invariant_names();

struct InvarianceResult {
  bool invariant = true;
  int family = 0;  // first failing family
  Expr residual;
};

/// Lie derivative along X_i(f)^(k) for all five families with formal f.
InvarianceResult verify_invariance(const Expr& e, int k);

struct CommutatorCheck {
  int i = 0;
  int j = 0;
  std::string relation;
  std::array<Expr, 3> residual;
  bool ok() const { return residual[0].is_zero() && residual[1].is_zero() && residual[2].is_zero(); }
};

std::vector<CommutatorCheck> verify_derivation_commutators();

struct IdentityCheck {
  std::string name;
  Expr residual;
  bool ok() const { return residual.is_zero(); }
};

std::vector<IdentityCheck> verify_identities();

using ExprMatrix3 = std::array<std::array<Expr, 3>, 3>;

struct Coframe {
  /// u_x^2 g(nabla_i, nabla_j) for the horizontal normal-form metric.
  ExprMatrix3 metric;
  /// omega(nabla_i) before and after adding 2 d(u_x)/u_x.
  std::array<Expr, 3> omega_raw;
  std::array<Expr, 3> omega_adjusted;
  /// Determinant of the coframe dual to the derivations.
  Expr determinant;
};

Coframe coframe_rewrite();
ExprMatrix3 expected_coframe_metric();
std::array<Expr, 3> expected_coframe_omega();

/// Rank of d(basic invariants)/d(internal jets of order <= 3) at p.
int jacobian_rank(const JetPoint& p);

enum class Series { weyl, ew_general, ms };

std::string series_name(Series s);
std::optional<Series> parse_series(const std::string& name);

struct CountRecord {
  Series series = Series::ms;
  int k = 0;
  long s = 0;
  long h = 0;
};

/// Closed formulas for h_k and s_k = h_0 + ... + h_k.
CountRecord counting(Series series, int k);

/// Taylor coefficients of the Poincare function up to z^order.
std::vector<long> poincare_series(Series series, int order);

}  // namespace ewinv
