#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ewinv/solution.hpp"

namespace ewinv {

using Matrix3 = std::array<std::array<Expr, 3>, 3>;
using Vector3 = std::array<Expr, 3>;
/// Christoffel symbols gamma[k][i][j] = Gamma^k_ij.
using Christoffel = std::array<Matrix3, 3>;

/// Normal-form metric and Weyl 1-form of a section, coordinates (t, x, y).
struct WeylPair {
  Matrix3 g;
  Vector3 omega;
};

WeylPair build_pair(const Solution& s);

/// Inverse metric; throws degenerate_metric when det g vanishes identically.
Matrix3 inverse_metric(const Matrix3& g);

/// Sign of the correction term in Gamma = gamma + sign/2 (w_i d_j^k + w_j d_i^k - g_ij w^k).
/// The Weyl connection with nabla g = omega (x) g uses minus.
enum class CorrectionSign { minus, plus };

Christoffel levi_civita(const Matrix3& g);
Christoffel weyl_connection(const WeylPair& p, CorrectionSign sign = CorrectionSign::minus);

/// (nabla_k g)_ij - omega_k g_ij, indexed [k][i][j].
std::array<Matrix3, 3> nonmetricity_residual(const WeylPair& p, const Christoffel& c);

/// Ric_ab = R^l_{l a b} with R^l_{ijk} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
Matrix3 ricci(const Christoffel& c);

Matrix3 symmetric_part(const Matrix3& m);
Matrix3 skew_part(const Matrix3& m);
/// (d omega)_ij = 1/2 (d_i w_j - d_j w_i).
Matrix3 exterior_derivative(const Vector3& omega);

/// Lambda = tr(g^-1 Ric_sym) / 3.
Expr einstein_factor(const Matrix3& g, const Matrix3& ric_sym);

struct GeometryReport {
  Expr ms_residual1;
  Expr ms_residual2;
  std::array<Matrix3, 3> nonmetricity;
  Matrix3 skew_residual;  // Ric_skew - 3/2 d omega
  Matrix3 ew_residual;    // Ric_sym - Lambda g
  Expr lambda;

  bool ms_ok() const;
  bool nonmetricity_ok() const;
  bool skew_ok() const;
  bool ew_ok() const;
};

/// Symbolic check of the equation, nabla g = omega g, the skew Ricci
/// identity and the Einstein-Weyl condition.
GeometryReport analyze(const Solution& s, CorrectionSign sign = CorrectionSign::minus);

/// A sample point of the base together with values for formal functions.
struct SamplePoint {
  std::array<mpq_class, 3> base{};
  std::map<Symbol, Number> formal;

  std::map<Symbol, Number> valuation() const;
};

/// Deterministic Halton points in the domain, with formal data for the
/// formal functions appearing in `formal_symbols`.
std::vector<SamplePoint> sample_points(const Domain& d, const std::set<Symbol>& formal_symbols,
                                       std::size_t n, std::uint64_t seed);

struct PointCheck {
  SamplePoint point;
  Number ms_residual;   // max |F_i|
  Number ew_residual;   // relative |Ric_sym - Lambda g|
  Number skew_residual; // relative |Ric_skew - 3/2 d omega|
  Number lambda;
  bool passed = false;
};

struct EwCheck {
  std::vector<PointCheck> points;
  double tol = 1e-9;
  bool passed() const;
  Number max_ew_residual() const;
  Number max_ms_residual() const;
};

/// Numeric Einstein-Weyl check; exact zero is required at rational values.
EwCheck check_EW(const Solution& s, const std::vector<SamplePoint>& pts, double tol = 1e-9,
                 CorrectionSign sign = CorrectionSign::minus);

struct CanonicalFrame {
  std::optional<std::string> degeneracy;
  std::array<std::array<Number, 3>, 3> e{};  // e1, e2, e3
  Number norm;      // |d omega|^2_g before normalization
  Number j_square;  // J^2 = j_square * id on the complement of L1
};

CanonicalFrame canonical_frame(const WeylPair& p, const SamplePoint& pt);

/// Catalog identifiers.
std::vector<std::string> catalog_ids();

/// Catalog solution. The exp and sl2 families take f, h (functions of t,
/// formal by default). Throws unknown_id.
Solution catalog(const std::string& id, const Expr& f = Expr::formal("f"), const Expr& h = Expr::formal("h"));

/// Parses "id" or "id(f, h)" or, for the hierarchy, "hierarchy(w)".
Solution parse_catalog_id(const std::string& text);

/// Default hierarchy potential w = x^3 + p x^2 + q x + r on t > 0.
Expr hierarchy_potential();

Solution hierarchy_solution(const Expr& w);

/// F(w) = w_tx + w_x w_xy - w_y w_xx - w_yy.
Expr hierarchy_lhs(const Expr& w);

/// F(w) = f(t); f is removable by a point transformation.
bool satisfies_hierarchy(const Expr& w);

struct HierarchyCheck {
  Expr r1;  // F_1(w_x, -w_y) - D_x F
  Expr r2;  // F_2(w_x, -w_y) + D_y F
  bool ok() const { return r1.is_zero() && r2.is_zero(); }
};

/// Jet-level identity relating the equation to the hierarchy, in w-jets.
HierarchyCheck hierarchy_identity();

/// F_2 with u = 0 minus v_tx + v_x^2 + v v_xx - v_yy.
Expr dkp_residual();

}  // namespace ewinv
