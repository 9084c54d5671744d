#pragma once

#include <string>

#include "ewinv/expr.hpp"

namespace ewinv {

struct ParseOptions {
  /// Accept u, v and jet coordinates such as u_txy or v_t3x2.
  bool allow_jets = true;
  /// Accept the hierarchy potential w and its jets.
  bool allow_w = false;
};

/// Parses the expression language:
///   numbers, t x y, jets (u_xxy, v_t3x2), formal functions f(t), f'(t),
///   exp(q*y) atoms, + - * / and ^ with an integer or parenthesized
///   rational exponent, e.g. y^(2/3).
/// Errors carry "line:column".
Expr parse_expr(const std::string& text, const ParseOptions& options = {});

struct SolutionText {
  Expr u;
  Expr v;
};

/// Parses "u = <expr>; v = <expr>" where the expressions may not contain
/// jet coordinates.
SolutionText parse_solution_text(const std::string& text);

}  // namespace ewinv
