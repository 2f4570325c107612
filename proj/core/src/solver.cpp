#include "sqjacobi/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "sqjacobi/error.hpp"

namespace sqjacobi {

namespace {

// Off-diagonal sum of squares per row. A rotation at (p, q) rewrites rows p
// and q entirely; in every other row it only rotates the pair (a_rp, a_rq),
// which leaves that row's sum unchanged. So only rows p and q are refreshed.
class OffNormTracker {
 public:
  explicit OffNormTracker(const DenseMatrix& m) : row_sq_(m.size()) { reset(m); }

  void reset(const DenseMatrix& m) {
    for (std::size_t r = 0; r < m.size(); ++r) refresh(m, r);
  }

  void rotated(const DenseMatrix& m, std::size_t p, std::size_t q) {
    refresh(m, p);
    refresh(m, q);
  }

  double psi() const { return std::sqrt(std::accumulate(row_sq_.begin(), row_sq_.end(), 0.0)); }

 private:
  void refresh(const DenseMatrix& m, std::size_t r) {
    double s = 0.0;
    const auto row = m.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != r) s += row[j] * row[j];
    }
    row_sq_[r] = s;
  }

  std::vector<double> row_sq_;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// Rounding level of Psi once the iteration has converged as far as doubles
// allow; the quadratic bound is only checked above it.
double estimate_noise_floor(std::size_t n, double norm) {
  return 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * norm;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  return m == Method::SqrtRotation ? "sqrt" : "givens";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "sqrt") return Method::SqrtRotation;
  if (name == "givens") return Method::GivensRotation;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidConfig, "tol must be positive");
  if (max_sweeps < 0) throw Error(ErrorCode::InvalidConfig, "max_sweeps must be >= 0");
  if (!(shift_delta > 0.0 && shift_delta < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "shift_delta must lie in (0, 1)");
  }
  if (shift_delta != 0.5) {
    throw Error(ErrorCode::InvalidConfig, "only shift_delta = 0.5 is implemented");
  }
  if (gap_delta && !(*gap_delta > 0.0)) throw Error(ErrorCode::InvalidConfig, "gap_delta must be positive");
}

double off_norm(const DenseMatrix& m) {
  // psinorm: pairs (i, j) and (j, i) for i < j.
  const std::size_t n = m.size();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += m(i, j) * m(i, j) + m(j, i) * m(j, i);
  }
  return std::sqrt(sum);
}

double off_norm(const SymmetricMatrix& m) { return off_norm(m.dense()); }

PlaneRotation pivot_rotation(const PivotBlock& block, Method method) {
  if (method == Method::SqrtRotation) return sqrt_rotation(block).plane();
  return givens_schur(block).plane();
}

namespace {

struct SweepState {
  DenseMatrix& m;
  DenseMatrix* v;
  OffNormTracker& tracker;
  std::vector<double>* rotation_psi;
};

long run_sweep(SweepState& st, Method method, int sweep_index, const RotationObserver& observer) {
  const std::size_t n = st.m.size();
  long applied = 0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const PivotBlock block = PivotBlock::from(st.m, p, q);
      const PlaneRotation rot = pivot_rotation(block, method);
      const bool apply = !rot.is_identity();
      if (apply) {
        apply_two_sided(st.m, rot, p, q);
        if (st.v) apply_right(*st.v, rot, 0, n - 1, p, q);
        st.tracker.rotated(st.m, p, q);
        ++applied;
      }
      const double psi = st.tracker.psi();
      if (st.rotation_psi) st.rotation_psi->push_back(psi);
      if (observer) observer(RotationEvent{sweep_index, block, rot, apply, psi, &st.m});
    }
  }
  return applied;
}

}  // namespace

long cyclic_sweep(DenseMatrix& m, DenseMatrix* v, Method method, const RotationObserver& observer) {
  if (v && v->size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "accumulator size differs");
  OffNormTracker tracker(m);
  SweepState st{m, v, tracker, nullptr};
  return run_sweep(st, method, 1, observer);
}

double min_eigenvalue_gap(std::span<const double> eigenvalues) {
  std::vector<double> sorted(eigenvalues.begin(), eigenvalues.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

ConvergenceEstimate check_quadratic_estimate(std::span<const double> history, std::size_t n,
                                             double gap_delta, double noise_floor) {
  if (n < 2) throw Error(ErrorCode::InvalidConfig, "quadratic estimate needs n >= 2");
  if (!(gap_delta > 0.0)) throw Error(ErrorCode::InvalidConfig, "gap_delta must be positive");
  const std::size_t rotations = n * (n - 1) / 2;
  if (history.size() < rotations + 1) {
    throw Error(ErrorCode::InsufficientHistory,
                "need " + std::to_string(rotations + 1) + " samples, got " + std::to_string(history.size()));
  }

  ConvergenceEstimate est;
  est.gap_delta = gap_delta;
  est.rotations_per_sweep = rotations;
  est.noise_floor = noise_floor;
  est.asymptotic_threshold = gap_delta / (2.0 * std::numbers::sqrt2);

  const double coeff = 1.0 / (gap_delta * std::numbers::sqrt2);
  const std::size_t count = history.size() - rotations;
  est.observations.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    EstimateObservation obs;
    obs.k = k;
    obs.psi_k = history[k];
    obs.psi_k_plus_n = history[k + rotations];
    obs.bound = coeff * obs.psi_k * obs.psi_k;
    obs.satisfied = obs.psi_k_plus_n <= obs.bound + noise_floor;
    if (!obs.satisfied) {
      ++est.violations;
      if (obs.psi_k < est.asymptotic_threshold) ++est.violations_below_threshold;
    }
    est.observations.push_back(obs);
  }

  if (!est.observations.back().satisfied) return est;  // no onset
  std::size_t onset = 0;
  for (std::size_t k = count; k-- > 0;) {
    if (!est.observations[k].satisfied) {
      onset = k + 1;
      break;
    }
  }
  est.onset_index = onset;
  return est;
}

SolveResult solve(const SymmetricMatrix& a, const SolverConfig& config,
                  const RotationObserver& observer) {
  config.validate();
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::DegenerateInput, "matrix has dimension 0");

  const auto start = std::chrono::steady_clock::now();
  const double norm = a.frobenius_norm();

  SolveResult result;
  SweepReport& report = result.report;
  report.threshold = config.tol * norm;

  DenseMatrix m = a.dense();
  DenseMatrix v = DenseMatrix::identity(n);
  OffNormTracker tracker(m);
  double psi = off_norm(m);
  report.psi_history.push_back(psi);
  if (config.record_rotations) report.rotation_psi.push_back(psi);

  SweepState st{m, &v, tracker, config.record_rotations ? &report.rotation_psi : nullptr};
  while (psi > report.threshold && report.sweeps < config.max_sweeps) {
    ++report.sweeps;
    report.rotations_applied += run_sweep(st, config.method, report.sweeps, observer);

    psi = off_norm(m);
    const double tracked = tracker.psi();
    const double scale = std::max(psi, std::numeric_limits<double>::epsilon() * norm);
    if (scale > 0.0) {
      report.max_reconcile_error = std::max(report.max_reconcile_error, std::abs(tracked - psi) / scale);
    }
    tracker.reset(m);
    report.psi_history.push_back(psi);
  }
  report.psi = psi;
  report.converged = psi <= report.threshold;

  // Eigenvalues from the diagonal, descending, vectors permuted in lockstep.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return m(x, x) > m(y, y); });
  EigenDecomposition& dec = result.decomposition;
  dec.eigenvalues.resize(n);
  dec.eigenvectors = DenseMatrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    dec.eigenvalues[c] = m(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) dec.eigenvectors(r, c) = v(r, order[c]);
  }

  if (config.analyze_convergence && n >= 2 && config.record_rotations) {
    const double gap = config.gap_delta.value_or(min_eigenvalue_gap(dec.eigenvalues));
    const std::size_t per_sweep = n * (n - 1) / 2;
    if (gap > 0.0 && std::isfinite(gap) && report.rotation_psi.size() >= per_sweep + 1) {
      result.estimate = check_quadratic_estimate(report.rotation_psi, n, gap, estimate_noise_floor(n, norm));
    }
  }

  report.wall_time_ms = elapsed_ms(start);
  return result;
}

}  // namespace sqjacobi
