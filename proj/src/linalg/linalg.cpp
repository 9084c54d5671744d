#include "ewinv/linalg.hpp"

#include <algorithm>

#include "ewinv/error.hpp"

namespace ewinv {

namespace {

bool all_exact(const NumberMatrix& m) {
  for (const auto& row : m)
    for (const Number& x : row)
      if (!x.is_exact()) return false;
  return true;
}

RationalMatrix to_rational(const NumberMatrix& m) {
  RationalMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const Number& x : m[i]) r[i].push_back(x.rational());
  return r;
}

std::vector<std::vector<Float>> to_float(const NumberMatrix& m) {
  std::vector<std::vector<Float>> r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const Number& x : m[i]) r[i].push_back(x.to_float());
  return r;
}

}  // namespace

int rank(RationalMatrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return int(r);
}

int rank(const NumberMatrix& m, double tol) {
  if (all_exact(m)) return rank(to_rational(m));
  auto a = to_float(m);
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size();
  Float scale = 0;
  for (const auto& row : a)
    for (const Float& x : row) scale = std::max(scale, Float(abs(x)));
  if (scale == 0) return 0;
  Float eps = scale * tol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (abs(a[i][c]) > abs(a[p][c])) p = i;
    if (abs(a[p][c]) <= eps) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      Float f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return int(r);
}

mpq_class determinant(RationalMatrix m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorKind::invalid_argument, "determinant of a non-square matrix");
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

Number determinant(const NumberMatrix& m) {
  if (all_exact(m)) return Number(determinant(to_rational(m)));
  auto a = to_float(m);
  std::size_t n = a.size();
  Float det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (abs(a[i][c]) > abs(a[p][c])) p = i;
    if (a[p][c] == 0) return Number::from_float(Float(0));
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Float f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return Number::from_float(det);
}

}  // namespace ewinv
