#pragma once

// Test-only oracles. These deliberately avoid the library's own formulas:
// explicit matrix products instead of the row/column kernels, long-double
// characteristic polynomials instead of the closed forms, elimination for
// determinants.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sqjacobi/io.hpp"
#include "sqjacobi/matrix.hpp"
#include "sqjacobi/rotation.hpp"

namespace sqjacobi::test {

inline DenseMatrix worked_example_dense() {
  DenseMatrix m(3);
  m(0, 0) = 1.0;
  m(0, 2) = 2.0;
  m(2, 0) = 2.0;
  m(1, 1) = 3.0;
  m(2, 2) = 4.0;
  return m;
}

inline SymmetricMatrix worked_example() { return make_symmetric_exact(worked_example_dense()); }

/// f(x) = (a_qq - a_pp) sqrt(1/4 - x^2) + 2 a_pq x in long double.
inline long double annihilation_ld(const PivotBlock& b, double x) {
  const long double lx = x;
  const long double r = std::sqrt(std::max(0.0L, 0.25L - lx * lx));
  return (static_cast<long double>(b.a_qq) - b.a_pp) * r + 2.0L * b.a_pq * lx;
}

/// Roots of l^2 - (a+d) l + (ad - b^2), larger first, in long double.
inline std::pair<double, double> quadratic_eigs(double a, double b, double d) {
  const long double tr = static_cast<long double>(a) + d;
  const long double det = static_cast<long double>(a) * d - static_cast<long double>(b) * b;
  const long double disc = std::sqrt(std::max(0.0L, tr * tr - 4.0L * det));
  return {static_cast<double>((tr + disc) / 2.0L), static_cast<double>((tr - disc) / 2.0L)};
}

/// Explicit R M R^T with R the n x n identity carrying [[c, s], [-s, c]] at
/// rows/columns (p, q); O(n^3) products in long double.
inline DenseMatrix brute_similarity(const DenseMatrix& m, double c, double s, std::size_t p, std::size_t q) {
  const std::size_t n = m.size();
  std::vector<long double> r(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1.0L;
  r[p * n + p] = c;
  r[p * n + q] = s;
  r[q * n + p] = -s;
  r[q * n + q] = c;
  std::vector<long double> rm(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) rm[i * n + j] += r[i * n + k] * m(k, j);
  DenseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long double acc = 0.0L;
      for (std::size_t k = 0; k < n; ++k) acc += rm[i * n + k] * r[j * n + k];
      out(i, j) = static_cast<double>(acc);
    }
  }
  return out;
}

/// Off-diagonal norm straight from the definition (long double accumulation).
inline double offdiag_ld(const DenseMatrix& m) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) s += static_cast<long double>(m(i, j)) * m(i, j);
  return static_cast<double>(std::sqrt(s));
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double det_by_elimination(const DenseMatrix& a) {
  const std::size_t n = a.size();
  std::vector<long double> m(a.data().begin(), a.data().end());
  long double det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
    if (m[piv * n + k] == 0.0L) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = m[i * n + k] / m[k * n + k];
      for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  return static_cast<double>(det);
}

/// Random block with entries uniform in [-1, 1] and |a_pq| >= min_apq.
inline PivotBlock random_block(io::SplitMix64& rng, double min_apq = 1e-6) {
  PivotBlock b;
  b.a_pp = rng.uniform(-1.0, 1.0);
  b.a_qq = rng.uniform(-1.0, 1.0);
  do {
    b.a_pq = rng.uniform(-1.0, 1.0);
  } while (std::abs(b.a_pq) < min_apq);
  return b;
}

inline DenseMatrix block_matrix(const PivotBlock& b) {
  DenseMatrix m(2);
  m(0, 0) = b.a_pp;
  m(0, 1) = b.a_pq;
  m(1, 0) = b.a_pq;
  m(1, 1) = b.a_qq;
  return m;
}

inline bool bitwise_equal(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.data().size(); ++i) {
    if (std::bit_cast<std::uint64_t>(x.data()[i]) != std::bit_cast<std::uint64_t>(y.data()[i])) return false;
  }
  return true;
}

inline double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

}  // namespace sqjacobi::test
