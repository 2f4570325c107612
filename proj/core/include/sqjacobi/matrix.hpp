#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sqjacobi {

/// Dense square matrix of doubles, row-major. Used as the working storage of
/// a solve and for eigenvector accumulation; carries no symmetry guarantee.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

  std::span<const double> data() const noexcept { return data_; }

  double frobenius_norm() const noexcept;
  double trace() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Validated real symmetric matrix: n >= 1, all entries finite and mirrored
/// entries equal. Only `validate_symmetric` and the trusted factories
/// below produce one.
class SymmetricMatrix {
 public:
  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const DenseMatrix& dense() const noexcept { return m_; }

  double frobenius_norm() const noexcept { return m_.frobenius_norm(); }
  double trace() const noexcept { return m_.trace(); }

  /// Builds from a lower triangle supplied as `lower(i, j)` for j <= i,
  /// mirroring it to the upper triangle.
  template <class Fn>
  static SymmetricMatrix from_lower(std::size_t n, Fn&& lower);

  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix diagonal(std::span<const double> diag);

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  friend SymmetricMatrix validate_symmetric(const DenseMatrix& raw, double sym_tol);
  friend SymmetricMatrix make_symmetric_exact(DenseMatrix m);
  explicit SymmetricMatrix(DenseMatrix m) : m_(std::move(m)) {}

  DenseMatrix m_;
};

inline constexpr double kDefaultSymTol = 1e-12;

/// Row-major grid input to validation; rows may be ragged (rejected).
using Grid = std::vector<std::vector<double>>;

DenseMatrix to_dense(const Grid& grid);

/// Accepts `raw` when every |raw(i,j) - raw(j,i)| <= sym_tol * max(1, |raw|_F)
/// and returns it symmetrized by averaging mirrored pairs.
SymmetricMatrix validate_symmetric(const DenseMatrix& raw, double sym_tol = kDefaultSymTol);
SymmetricMatrix validate_symmetric(const Grid& raw, double sym_tol = kDefaultSymTol);

/// Wraps a matrix whose mirrored entries are already equal; throws
/// AsymmetryExceeded otherwise and NonFinite on NaN/Inf.
SymmetricMatrix make_symmetric_exact(DenseMatrix m);

template <class Fn>
SymmetricMatrix SymmetricMatrix::from_lower(std::size_t n, Fn&& lower) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = lower(i, j);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return make_symmetric_exact(std::move(m));
}

double max_abs_asymmetry(const DenseMatrix& m) noexcept;

}  // namespace sqjacobi
