#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sqjacobi/matrix.hpp"
#include "sqjacobi/rotation.hpp"
#include "sqjacobi/solver.hpp"

// Verification oracles. Nothing here calls into the Jacobi solver.
namespace sqjacobi::oracle {

enum class OracleMethod { Closed2x2, CharPolyBisection, ByConstruction };

std::string_view to_string(OracleMethod m) noexcept;

struct OracleResult {
  std::vector<double> eigenvalues;  // descending
  OracleMethod method = OracleMethod::ByConstruction;
  double certified_tol = 0.0;
};

inline constexpr std::size_t kCharPolyMaxN = 8;

/// Quadratic formula on [[a_pp, a_pq], [a_pq, a_qq]].
OracleResult eigenvalues_2x2(const PivotBlock& block) noexcept;

/// Characteristic polynomial via the Faddeev-LeVerrier trace recursion,
/// roots isolated by bisection between the roots of its derivatives.
/// Throws DimensionTooLarge for n > max_n and RootIsolationFailed when fewer
/// than n roots are found.
OracleResult eigenvalues_charpoly(const SymmetricMatrix& a, std::size_t max_n = kCharPolyMaxN);

/// Wraps a prescribed spectrum (e.g. of a Q diag(l) Q^T construction).
OracleResult by_construction(std::span<const double> spectrum, double certified_tol = 1e-10);

/// Coefficients c_0..c_n of det(l I - A), c_n = 1.
std::vector<double> characteristic_polynomial(const SymmetricMatrix& a);

/// max_i |A v_i - l_i v_i|_2. Throws DimensionMismatch.
double residual_check(const SymmetricMatrix& a, const EigenDecomposition& decomp);

/// |V^T V - I|_F.
double orthogonality_error(const DenseMatrix& v);

}  // namespace sqjacobi::oracle
