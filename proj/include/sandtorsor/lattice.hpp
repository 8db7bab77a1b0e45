#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core.hpp"

namespace sandtorsor {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<BigInt>>;

template <class T>
IntMatrix to_big(const std::vector<std::vector<T>>& m) {
  IntMatrix out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

/* Floor division for arbitrary-precision integers. */
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/* Determinant by fraction-free elimination. */
inline BigInt determinant(IntMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline std::size_t rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<BigRational>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      BigRational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/* Invariant factors greater than one of an integer matrix (Smith normal form diagonal). */
inline std::vector<BigInt> invariant_factors(IntMatrix m) {
  std::size_t rows = m.size(), cols = rows == 0 ? 0 : m[0].size();
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    bool exhausted = false;
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) pr = i, pc = j;
      if (pr == rows) {
        exhausted = true;
        break;
      }
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        BigInt q = floor_div(m[i][t], m[t][t]);
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        BigInt q = floor_div(m[t][j], m[t][t]);
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
    }
    if (exhausted) break;
    diag.push_back(abs(m[t][t]));
  }
  std::vector<BigInt> out;
  for (auto& d : diag)
    if (d > 1) out.push_back(d);
  return out;
}

/*
 * Row Hermite normal form of the lattice spanned by the rows of a generator
 * matrix. Pivot row i has its pivot in column pivot_column[i].
 */
struct HermiteBasis {
  IntMatrix rows;
  std::vector<std::size_t> pivot_column;
  std::size_t dimension = 0;

  bool full_rank() const { return rows.size() == dimension; }

  BigInt index() const {
    BigInt out = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) out *= rows[i][pivot_column[i]];
    return out;
  }

  /* Canonical coset representative: pivot coordinates reduced into [0, pivot). */
  std::vector<BigInt> reduce(std::vector<BigInt> v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t c = pivot_column[i];
      BigInt q = floor_div(v[c], rows[i][c]);
      if (q != 0)
        for (std::size_t j = c; j < dimension; ++j) v[j] -= q * rows[i][j];
    }
    return v;
  }
};

inline HermiteBasis hermite_basis(IntMatrix gens, std::size_t dimension) {
  HermiteBasis h;
  h.dimension = dimension;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dimension && r < gens.size(); ++c) {
    for (;;) {
      std::size_t p = gens.size();
      for (std::size_t i = r; i < gens.size(); ++i)
        if (gens[i][c] != 0 && (p == gens.size() || abs(gens[i][c]) < abs(gens[p][c]))) p = i;
      if (p == gens.size()) break;
      std::swap(gens[r], gens[p]);
      bool done = true;
      for (std::size_t i = r + 1; i < gens.size(); ++i) {
        if (gens[i][c] == 0) continue;
        BigInt q = floor_div(gens[i][c], gens[r][c]);
        for (std::size_t j = c; j < dimension; ++j) gens[i][j] -= q * gens[r][j];
        if (gens[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (gens[r][c] == 0) continue;
    if (gens[r][c] < 0)
      for (auto& x : gens[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = floor_div(gens[i][c], gens[r][c]);
      if (q != 0)
        for (std::size_t j = c; j < dimension; ++j) gens[i][j] -= q * gens[r][j];
    }
    h.pivot_column.push_back(c);
    ++r;
  }
  h.rows.assign(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(r));
  return h;
}

}  // namespace sandtorsor
