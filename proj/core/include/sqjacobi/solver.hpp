#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sqjacobi/matrix.hpp"
#include "sqjacobi/rotation.hpp"

namespace sqjacobi {

enum class Method { SqrtRotation, GivensRotation };

std::string_view to_string(Method m) noexcept;
/// Accepts "sqrt" and "givens".
std::optional<Method> parse_method(std::string_view name) noexcept;

struct SolverConfig {
  double tol = 1e-12;       // stop once off_norm <= tol * |A|_F
  int max_sweeps = 1000;    // 0 runs no sweep at all
  Method method = Method::SqrtRotation;
  double shift_delta = 0.5; // only 1/2 is implemented
  /// Record Psi after every pivot visit (needed by the quadratic estimate).
  bool record_rotations = true;
  /// Populate SolveResult::estimate; gap taken from `gap_delta` when set,
  /// otherwise from the final spectrum.
  bool analyze_convergence = false;
  std::optional<double> gap_delta;

  /// Throws InvalidConfig.
  void validate() const;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  DenseMatrix eigenvectors;         // column i pairs with eigenvalues[i]
};

struct SweepReport {
  int sweeps = 0;
  double psi = 0.0;  // off-norm of the final working matrix
  long rotations_applied = 0;
  double threshold = 0.0;  // tol * |A|_F
  bool converged = false;
  double wall_time_ms = 0.0;
  /// Psi at each sweep boundary; entry 0 is the input's off-norm.
  std::vector<double> psi_history;
  /// Psi after every pivot visit (identity pivots included); entry 0 is the
  /// input's off-norm. Empty unless record_rotations.
  std::vector<double> rotation_psi;
  /// Largest relative gap seen between the incrementally tracked Psi and a
  /// from-scratch recomputation at a sweep boundary.
  double max_reconcile_error = 0.0;
};

struct EstimateObservation {
  std::size_t k = 0;
  double psi_k = 0.0;
  double psi_k_plus_n = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// Monitors Psi(A^(k+N)) <= Psi(A^(k))^2 / (gap_delta * sqrt(2)) along a
/// per-rotation history, N = n(n-1)/2.
struct ConvergenceEstimate {
  double gap_delta = 0.0;
  std::size_t rotations_per_sweep = 0;
  double noise_floor = 0.0;
  std::vector<EstimateObservation> observations;
  /// First k from which every later observation is satisfied.
  std::optional<std::size_t> onset_index;
  /// gap_delta / (2 sqrt 2): the asymptotic regime starts below this Psi.
  double asymptotic_threshold = 0.0;
  /// Violations among observations with psi_k < asymptotic_threshold.
  std::size_t violations_below_threshold = 0;
  std::size_t violations = 0;
};

struct SolveResult {
  EigenDecomposition decomposition;
  SweepReport report;
  std::optional<ConvergenceEstimate> estimate;

  bool converged() const noexcept { return report.converged; }
};

/// Off-norm sqrt(sum_{i != j} a_ij^2).
double off_norm(const DenseMatrix& m);
double off_norm(const SymmetricMatrix& m);

/// Everything a per-pivot observer may want to inspect. `matrix` is the
/// working matrix after the rotation was applied.
struct RotationEvent {
  int sweep = 0;
  PivotBlock before;
  PlaneRotation rotation;
  bool applied = false;  // false for a_pq == 0 pivots
  double psi_after = 0.0;
  const DenseMatrix* matrix = nullptr;
};

using RotationObserver = std::function<void(const RotationEvent&)>;

/// Rotation that annihilates `block` for the chosen method, in the R M R^T
/// convention of apply_left/apply_right.
PlaneRotation pivot_rotation(const PivotBlock& block, Method method);

/// One cyclic sweep over p < q in row-major order. Rotations are applied to
/// `m` two-sidedly and right-applied to `v` when given. Returns the number of
/// non-identity rotations.
long cyclic_sweep(DenseMatrix& m, DenseMatrix* v, Method method,
                  const RotationObserver& observer = {});

SolveResult solve(const SymmetricMatrix& a, const SolverConfig& config = {},
                  const RotationObserver& observer = {});

/// Throws InsufficientHistory when fewer than N + 1 samples are given, and
/// InvalidConfig when gap_delta <= 0. An observation counts as satisfied when
/// Psi(k+N) <= bound + noise_floor.
ConvergenceEstimate check_quadratic_estimate(std::span<const double> history, std::size_t n,
                                             double gap_delta, double noise_floor = 0.0);

/// Smallest |l_i - l_j| over i != j; +inf for fewer than two values.
double min_eigenvalue_gap(std::span<const double> eigenvalues);

}  // namespace sqjacobi
