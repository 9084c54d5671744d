#pragma once

#include <vector>

#include "ewinv/number.hpp"

namespace ewinv {

using RationalMatrix = std::vector<std::vector<mpq_class>>;
using NumberMatrix = std::vector<std::vector<Number>>;

/// Exact rank by Gaussian elimination over Q.
int rank(RationalMatrix m);

/// Rank with partial pivoting; entries below `tol` times the largest entry
/// count as zero. Exact matrices are ranked exactly.
int rank(const NumberMatrix& m, double tol = 1e-20);

/// Exact determinant of a square matrix.
mpq_class determinant(RationalMatrix m);

Number determinant(const NumberMatrix& m);

}  // namespace ewinv
