#pragma once

#include <cstddef>
#include <string_view>

#include "sqjacobi/matrix.hpp"

namespace sqjacobi {

/// The symmetric 2x2 sub-block at pivot (p, q), 0-based, p < q.
struct PivotBlock {
  double a_pp = 0.0;
  double a_pq = 0.0;
  double a_qq = 0.0;
  std::size_t p = 0;
  std::size_t q = 1;

  static PivotBlock from(const DenseMatrix& m, std::size_t p, std::size_t q);

  /// |a_pp| + |a_qq| + 2|a_pq|, the scale used for relative tolerances.
  double magnitude() const noexcept;
};

/// Plane rotation R = [[c, s], [-s, c]] acting on rows/columns (i, k).
/// `apply_left` forms R M and `apply_right` forms M R^T, so the pair
/// computes R M R^T.
struct PlaneRotation {
  double c = 1.0;
  double s = 0.0;

  bool is_identity() const noexcept { return c == 1.0 && s == 0.0; }
};

/// Square-root parameterized rotation: c = sqrt(x + 1/2), s = sqrt(1/2 - x)
/// with x in [-1/2, 1/2]; both entries are non-negative, so the rotation
/// angle lies in [0, pi/2].
struct RotationParams {
  double x = 0.5;
  double c = 1.0;
  double s = 0.0;

  PlaneRotation plane() const noexcept { return {c, s}; }
};

enum class RootInterval {
  NegativeHalf,  // x0 in ]-1/2, 0[
  Zero,          // x0 = 0
  PositiveHalf,  // x0 in ]0, 1/2[
  Boundary,      // a_pq = 0, no root solve
};

std::string_view to_string(RootInterval tag) noexcept;

/// The two diagonal values produced at (p,p) and (q,q) by the annihilating
/// square-root rotation.
struct PredictedPair {
  double lambda_star = 0.0;   // lands at (p, p)
  double lambda_dstar = 0.0;  // lands at (q, q)
  bool degenerate = false;    // a_pq == 0 and a_pp == a_qq
};

/// Left side of the annihilation equation,
/// f(x) = (a_qq - a_pp) sqrt(1/4 - x^2) + 2 a_pq x.
double annihilation_residual(const PivotBlock& block, double x) noexcept;

/// Root x0 of the annihilation equation in [-1/2, 1/2]. Throws
/// ZeroOffDiagonal when a_pq == 0.
double solve_pivot_parameter(const PivotBlock& block);

/// c = sqrt(x + 1/2), s = sqrt(1/2 - x). Accepts x within 1e-12 of the
/// interval and clamps; throws ParameterOutOfRange otherwise.
RotationParams rotation_from_parameter(double x);

RotationParams identity_rotation() noexcept;

/// Annihilating square-root rotation for `block`, identity when a_pq == 0.
///
/// Mathematically equal to rotation_from_parameter(solve_pivot_parameter(b)),
/// but c^2 = 1/2 + x0 and s^2 = 1/2 - x0 are evaluated from the block
/// entries without forming 1/2 +- x0 in floating point. When
/// |a_pq| << |a_qq - a_pp| the root sits next to +-1/2 and the rounded x0
/// cannot resolve rotations smaller than ~1e-8; this route keeps full
/// relative accuracy in both c and s.
RotationParams sqrt_rotation(const PivotBlock& block);

RootInterval classify_root_interval(const PivotBlock& block) noexcept;

PredictedPair predicted_eigenvalues(const PivotBlock& block) noexcept;

/// Classical Jacobi rotation in the Golub-Van Loan convention (c, s) such that
/// J^T B J is diagonal for J = [[c, s], [-s, c]]; (1, 0) when a_pq == 0.
struct GivensRotation {
  double c = 1.0;
  double s = 0.0;

  /// Same similarity expressed as R B R^T with R = J^T.
  PlaneRotation plane() const noexcept { return {c, -s}; }
};

GivensRotation givens_schur(const PivotBlock& block) noexcept;

/// Rows i and k of M over columns [j1, j2] (inclusive) become
/// (c row_i + s row_k, -s row_i + c row_k).
void apply_left(DenseMatrix& m, PlaneRotation rot, std::size_t i, std::size_t k,
                std::size_t j1, std::size_t j2);

/// Columns i and k of M over rows [j1, j2] (inclusive) become
/// (c col_i + s col_k, -s col_i + c col_k).
void apply_right(DenseMatrix& m, PlaneRotation rot, std::size_t j1, std::size_t j2,
                 std::size_t i, std::size_t k);

/// apply_left then apply_right over the full index range.
void apply_two_sided(DenseMatrix& m, PlaneRotation rot, std::size_t p, std::size_t q);

}  // namespace sqjacobi
