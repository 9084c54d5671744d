#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ewinv/fields.hpp"
#include "ewinv/solution.hpp"

namespace ewinv {

/// X_family(parameter), family 1..5, parameter a function of t.
struct SymmetryGenerator {
  int family = 1;
  Expr parameter;

  PointField field() const;
  std::string to_string() const;
};

PointField symmetry_field(int family, const Expr& parameter);

/// A combination sum X_i(p_i) of the five families.
struct GeneratorSum {
  std::array<Expr, 5> parameters;

  PointField field() const;
  std::string to_string() const;
};

/// Writes a point field as sum X_i(p_i) with p_i functions of t, or nullopt.
std::optional<GeneratorSum> decompose(const PointField& x);

/// Tabulated right-hand side of [X_i(f), X_j(g)].
GeneratorSum table_entry(int i, int j, const Expr& f, const Expr& g);

struct TableCell {
  int i = 0;
  int j = 0;
  GeneratorSum expected;
  PointField residual;
  bool ok() const { return residual.is_zero(); }
};

/// All 25 cells with formal parameters f, g.
std::vector<TableCell> verify_commutation_table();

struct SymmetryCheck {
  Expr residual1;
  Expr residual2;
  bool ok() const { return residual1.is_zero() && residual2.is_zero(); }
};

/// Reduced L_{X^(2)} F_i for i = 1, 2.
SymmetryCheck check_symmetry(const PointField& x);

int grade(int family);

struct GradingReport {
  bool graded = true;
  bool perfect = true;
  std::vector<std::string> notes;
  bool ok() const { return graded && perfect; }
};

GradingReport grading_check();

/// a d_x + b d_y + y c d_x + (d d_t + 1/2 d' y d_y) + ((y^2 e' + 2 x e) d_x + y e d_y).
struct ShapeField {
  Expr a, b, c, d, e;

  PointField field() const;
};

struct Lift {
  PointField field;
  Expr chi;
};

/// Unique X + A d_u + B d_v with L g = chi g for the normal-form metric.
Lift lift_shape_field(const ShapeField& s);

/// Element of the point pseudogroup with D(t) = alpha^2 t + beta.
///   t' = D,  x' = E^2 x + E E' y^2 + C y + A,  y' = sqrt(D') E y + B.
struct PseudogroupElement {
  mpq_class alpha = 1;
  mpq_class beta = 0;
  Expr A, B, C;
  Expr E = Expr(1L);

  static PseudogroupElement identity() { return {}; }
  std::string to_string() const;
};

/// Image of a section under the element, as a graph over the new coordinates.
/// Throws non_invertible_element for alpha <= 0 or non-positive constant E,
/// non_representable when the result leaves the expression class.
Solution apply_pseudogroup(const PseudogroupElement& g, const Solution& s);

/// Image (t', x', y') of a point; requires E to be evaluable there.
std::array<Number, 3> pseudogroup_point(const PseudogroupElement& g, const std::array<mpq_class, 3>& p);

/// Rank of the prolonged symmetry fields X_i(t^m/m!), m <= k+1 (families
/// 1, 2, 4) and m <= k (families 3, 5), at theta in internal coordinates.
int orbit_dimension(int k, const JetPoint& theta);

/// u_x = u_xx = 1, other internal jets and the base point zero.
JetPoint orbit_reference_point(int k);

}  // namespace ewinv
