#include "sqjacobi/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <string>

#include "sqjacobi/error.hpp"

namespace sqjacobi {

namespace {

void require_finite(const DenseMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j))) {
        throw Error(ErrorCode::NonFinite,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not finite");
      }
    }
  }
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::frobenius_norm() const noexcept {
  // Scaled accumulation so huge or tiny entries neither overflow nor flush.
  double scale = 0.0;
  for (double v : data_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double v : data_) {
    const double t = v / scale;
    sum += t * t;
  }
  return scale * std::sqrt(sum);
}

double DenseMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  return make_symmetric_exact(DenseMatrix::identity(n));
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return make_symmetric_exact(std::move(m));
}

DenseMatrix to_dense(const Grid& grid) {
  const std::size_t n = grid.size();
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i].size() != n) {
      throw Error(ErrorCode::NonSquare, "row " + std::to_string(i + 1) + " has " +
                                            std::to_string(grid[i].size()) + " entries, expected " +
                                            std::to_string(n));
    }
    std::copy(grid[i].begin(), grid[i].end(), m.row(i).begin());
  }
  return m;
}

double max_abs_asymmetry(const DenseMatrix& m) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

SymmetricMatrix validate_symmetric(const DenseMatrix& raw, double sym_tol) {
  if (!(sym_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "sym_tol must be positive");
  const std::size_t n = raw.size();
  if (n == 0) throw Error(ErrorCode::DegenerateInput, "matrix has dimension 0");
  require_finite(raw);

  const double limit = sym_tol * std::max(1.0, raw.frobenius_norm());
  DenseMatrix out = raw;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double drift = std::abs(raw(i, j) - raw(j, i));
      if (drift > limit) {
        throw Error(ErrorCode::AsymmetryExceeded,
                    "|a(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") - a(" +
                        std::to_string(j + 1) + "," + std::to_string(i + 1) + ")| = " +
                        std::to_string(drift) + " exceeds " + std::to_string(limit));
      }
      // Bitwise-equal pairs stay untouched; everything else (even 0.0 / -0.0)
      // is averaged so the result mirrors exactly.
      if (std::bit_cast<std::uint64_t>(raw(i, j)) != std::bit_cast<std::uint64_t>(raw(j, i))) {
        const double avg = 0.5 * raw(i, j) + 0.5 * raw(j, i);
        out(i, j) = avg;
        out(j, i) = avg;
      }
    }
  }
  return SymmetricMatrix(std::move(out));
}

SymmetricMatrix validate_symmetric(const Grid& raw, double sym_tol) {
  return validate_symmetric(to_dense(raw), sym_tol);
}

SymmetricMatrix make_symmetric_exact(DenseMatrix m) {
  if (m.size() == 0) throw Error(ErrorCode::DegenerateInput, "matrix has dimension 0");
  require_finite(m);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (m(i, j) != m(j, i)) {
        throw Error(ErrorCode::AsymmetryExceeded, "matrix is not exactly symmetric");
      }
    }
  }
  return SymmetricMatrix(std::move(m));
}

}  // namespace sqjacobi
