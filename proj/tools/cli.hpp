#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqjacobi/solver.hpp"

namespace sqjacobi::cli {

/// Stable exit-code contract of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNotConverged = 2,
  kMethodsDisagree = 3,
};

/// One first-sweep pivot of the sqrt run, with the Givens rotation computed
/// on the same block.
struct PivotComparison {
  std::size_t p = 0;
  std::size_t q = 0;
  bool skipped = false;        // a_pq == 0
  double x = 0.5;              // sqrt-variant parameter
  double theta = 0.0;          // atan2(s, c) of the Givens rotation, R M R^T form
  double cos2theta_half = 0.5; // cos(2 theta) / 2
  bool same_quadrant = true;   // theta in [0, pi/2], where the sqrt angle lives
  /// |x - cos(2 theta') / 2| with theta' = theta, or theta + pi/2 when the
  /// quadrant differs (both rotations annihilate, so they agree mod pi/2).
  double mapped_error = 0.0;
};

struct CompareReport {
  SolveResult sqrt_run;
  SolveResult givens_run;
  double max_eigenvalue_gap = 0.0;
  double tolerance = 0.0;  // 1e-9 * |A|_F
  bool agree = false;
  std::vector<PivotComparison> pivots;
  std::size_t mismatched_quadrant = 0;
};

inline constexpr double kCompareRelTol = 1e-9;

/// Runs both methods on `a` with `config` (method field ignored).
CompareReport compare_methods(const SymmetricMatrix& a, SolverConfig config);

/// Full command-line entry point; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqjacobi::cli
