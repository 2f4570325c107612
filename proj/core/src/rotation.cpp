#include "sqjacobi/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqjacobi/error.hpp"

namespace sqjacobi {

namespace {

constexpr double kParameterSlack = 1e-12;

// Numerator of x0 for the sign case of a_pq; x0 = numerator / (2 S).
double root_numerator(const PivotBlock& b) noexcept {
  return b.a_pq > 0.0 ? b.a_pp - b.a_qq : b.a_qq - b.a_pp;
}

// S = sqrt((a_qq - a_pp)^2 + 4 a_pq^2) without intermediate overflow.
double root_scale(const PivotBlock& b) noexcept {
  return std::hypot(b.a_qq - b.a_pp, 2.0 * b.a_pq);
}

void check_pair(std::size_t i, std::size_t k, std::size_t n, const char* what) {
  if (!(i < k && k < n)) {
    throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " pair (" + std::to_string(i) +
                                                ", " + std::to_string(k) + ") invalid for n = " +
                                                std::to_string(n));
  }
}

void check_range(std::size_t j1, std::size_t j2, std::size_t n) {
  if (!(j1 <= j2 && j2 < n)) {
    throw Error(ErrorCode::IndexOutOfRange, "range [" + std::to_string(j1) + ", " +
                                                std::to_string(j2) + "] invalid for n = " +
                                                std::to_string(n));
  }
}

}  // namespace

std::string_view to_string(RootInterval tag) noexcept {
  switch (tag) {
    case RootInterval::NegativeHalf: return "NegativeHalf";
    case RootInterval::Zero: return "Zero";
    case RootInterval::PositiveHalf: return "PositiveHalf";
    case RootInterval::Boundary: return "Boundary";
  }
  return "Unknown";
}

PivotBlock PivotBlock::from(const DenseMatrix& m, std::size_t p, std::size_t q) {
  check_pair(p, q, m.size(), "pivot");
  return {m(p, p), m(p, q), m(q, q), p, q};
}

double PivotBlock::magnitude() const noexcept {
  return std::abs(a_pp) + std::abs(a_qq) + 2.0 * std::abs(a_pq);
}

double annihilation_residual(const PivotBlock& b, double x) noexcept {
  // 1/4 - x^2 factored so that x near +-1/2 keeps its low bits.
  const double root = std::sqrt(std::max(0.0, (0.5 - x) * (0.5 + x)));
  return (b.a_qq - b.a_pp) * root + 2.0 * b.a_pq * x;
}

double solve_pivot_parameter(const PivotBlock& block) {
  if (block.a_pq == 0.0) {
    throw Error(ErrorCode::ZeroOffDiagonal, "a_pq = 0; use identity_rotation()");
  }
  const double x0 = root_numerator(block) / (2.0 * root_scale(block));
  return std::clamp(x0, -0.5, 0.5);
}

RotationParams rotation_from_parameter(double x) {
  if (!(x >= -0.5 - kParameterSlack && x <= 0.5 + kParameterSlack)) {
    throw Error(ErrorCode::ParameterOutOfRange, "x = " + std::to_string(x) + " outside [-1/2, 1/2]");
  }
  x = std::clamp(x, -0.5, 0.5);
  return {x, std::sqrt(std::max(0.0, x + 0.5)), std::sqrt(std::max(0.0, 0.5 - x))};
}

RotationParams identity_rotation() noexcept { return {0.5, 1.0, 0.0}; }

RotationParams sqrt_rotation(const PivotBlock& block) {
  if (block.a_pq == 0.0) return identity_rotation();

  const double num = root_numerator(block);
  const double scale = root_scale(block);
  const double x0 = std::clamp(num / (2.0 * scale), -0.5, 0.5);

  // With S = scale and |num| <= S:
  //   1/2 + x0 = (S + num) / (2S),  1/2 - x0 = (S - num) / (2S),
  // and (S - |num|)(S + |num|) = 4 a_pq^2, so the cancelling side is
  //   (S - |num|) / (2S) = 2 a_pq^2 / (S (S + |num|)).
  const double wide = std::sqrt((scale + std::abs(num)) / (2.0 * scale));
  const double narrow = std::numbers::sqrt2 * std::abs(block.a_pq) /
                        (std::sqrt(scale) * std::sqrt(scale + std::abs(num)));
  if (num >= 0.0) return {x0, wide, narrow};
  return {x0, narrow, wide};
}

RootInterval classify_root_interval(const PivotBlock& b) noexcept {
  if (b.a_pq == 0.0) return RootInterval::Boundary;
  const double diff = b.a_qq - b.a_pp;
  if (diff == 0.0) return RootInterval::Zero;
  return (b.a_pq > 0.0) == (diff > 0.0) ? RootInterval::NegativeHalf : RootInterval::PositiveHalf;
}

PredictedPair predicted_eigenvalues(const PivotBlock& b) noexcept {
  if (b.a_pq == 0.0) {
    // Identity rotation: the diagonal stays where it is.
    return {b.a_pp, b.a_qq, b.a_pp == b.a_qq};
  }
  const double mid = 0.5 * b.a_pp + 0.5 * b.a_qq;
  const double half = 0.5 * root_scale(b);
  if (b.a_pq > 0.0) return {mid + half, mid - half, false};
  return {mid - half, mid + half, false};
}

GivensRotation givens_schur(const PivotBlock& b) noexcept {
  if (b.a_pq == 0.0) return {1.0, 0.0};
  // t = sign(tau) / (|tau| + sqrt(1 + tau^2)), tau = (a_qq - a_pp) / (2 a_pq),
  // rescaled by |2 a_pq| so that tiny a_pq cannot overflow tau.
  const double diff = b.a_qq - b.a_pp;
  const double sign = (diff == 0.0 || (diff > 0.0) == (b.a_pq > 0.0)) ? 1.0 : -1.0;
  const double two_apq = 2.0 * std::abs(b.a_pq);
  const double t = sign * two_apq / (std::abs(diff) + std::hypot(diff, two_apq));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c};
}

void apply_left(DenseMatrix& m, PlaneRotation rot, std::size_t i, std::size_t k, std::size_t j1,
                std::size_t j2) {
  check_pair(i, k, m.size(), "row");
  check_range(j1, j2, m.size());
  auto row_i = m.row(i);
  auto row_k = m.row(k);
  for (std::size_t j = j1; j <= j2; ++j) {
    const double t1 = row_i[j];
    const double t2 = row_k[j];
    row_i[j] = rot.c * t1 + rot.s * t2;
    row_k[j] = -rot.s * t1 + rot.c * t2;
  }
}

void apply_right(DenseMatrix& m, PlaneRotation rot, std::size_t j1, std::size_t j2, std::size_t i,
                 std::size_t k) {
  check_pair(i, k, m.size(), "column");
  check_range(j1, j2, m.size());
  for (std::size_t j = j1; j <= j2; ++j) {
    const double t1 = m(j, i);
    const double t2 = m(j, k);
    m(j, i) = rot.c * t1 + rot.s * t2;
    m(j, k) = -rot.s * t1 + rot.c * t2;
  }
}

void apply_two_sided(DenseMatrix& m, PlaneRotation rot, std::size_t p, std::size_t q) {
  const std::size_t last = m.size() - 1;
  apply_left(m, rot, p, q, 0, last);
  apply_right(m, rot, 0, last, p, q);
}

}  // namespace sqjacobi
