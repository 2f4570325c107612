#include "sqjacobi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "sqjacobi/error.hpp"

namespace sqjacobi::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Coefficients low-to-high.
using Poly = std::vector<double>;

double horner(const Poly& c, double x) {
  double r = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

// Running-error style bound for Horner evaluation of `c` at x.
double horner_error(const Poly& c, double x) {
  double mag = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) mag = mag * std::abs(x) + std::abs(c[i]);
  return 16.0 * static_cast<double>(c.size()) * kEps * mag;
}

Poly derivative(const Poly& c) {
  if (c.size() <= 1) return {0.0};
  Poly d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double bisect(const Poly& c, double lo, double hi) {
  int s_lo = sign_of(horner(c, lo));
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
    const int s_mid = sign_of(horner(c, mid));
    if (s_mid == 0) return mid;
    if (s_mid == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Real roots (with multiplicity) of a real-rooted polynomial in [lo, hi].
// The roots of p' interlace those of p, so between consecutive critical
// points p is monotone and holds at most one simple root; a critical point
// where p vanishes is a root whose multiplicity is one more than its
// multiplicity in p'.
std::vector<double> real_roots(const Poly& c, double lo, double hi) {
  const std::size_t degree = c.size() - 1;
  if (degree == 0) return {};
  if (degree == 1) return {-c[0] / c[1]};

  const std::vector<double> critical = real_roots(derivative(c), lo, hi);

  struct Point {
    double x;
    std::size_t mult;
  };
  std::vector<Point> points;
  for (double x : critical) {
    if (!points.empty() && points.back().x == x) {
      ++points.back().mult;
    } else {
      points.push_back({x, 1});
    }
  }

  std::vector<double> roots;
  std::vector<bool> is_root(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs(horner(c, points[i].x)) <= horner_error(c, points[i].x)) {
      is_root[i] = true;
      roots.insert(roots.end(), points[i].mult + 1, points[i].x);
    }
  }

  // Walk the intervals [lo, x_0], [x_0, x_1], ..., [x_last, hi].
  double left = lo;
  bool left_is_root = false;
  for (std::size_t i = 0; i <= points.size(); ++i) {
    const double right = i < points.size() ? points[i].x : hi;
    const bool right_is_root = i < points.size() && is_root[i];
    if (!left_is_root && !right_is_root && left < right) {
      const int sl = sign_of(horner(c, left));
      const int sr = sign_of(horner(c, right));
      if (sl != 0 && sr != 0 && sl != sr) roots.push_back(bisect(c, left, right));
    }
    left = right;
    left_is_root = right_is_root;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::string_view to_string(OracleMethod m) noexcept {
  switch (m) {
    case OracleMethod::Closed2x2: return "Closed2x2";
    case OracleMethod::CharPolyBisection: return "CharPolyBisection";
    case OracleMethod::ByConstruction: return "ByConstruction";
  }
  return "Unknown";
}

OracleResult eigenvalues_2x2(const PivotBlock& b) noexcept {
  const double mid = 0.5 * (b.a_pp + b.a_qq);
  const double half = 0.5 * std::hypot(b.a_pp - b.a_qq, 2.0 * b.a_pq);
  const double scale = std::max({1.0, std::abs(b.a_pp), std::abs(b.a_qq), std::abs(b.a_pq)});
  return {{mid + half, mid - half}, OracleMethod::Closed2x2, 4.0 * kEps * scale};
}

std::vector<double> characteristic_polynomial(const SymmetricMatrix& a) {
  // M_0 = 0; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = a.size();
  std::vector<double> coeff(n + 1, 0.0);
  coeff[n] = 1.0;
  DenseMatrix mk(n);
  DenseMatrix amk(n);
  for (std::size_t k = 1; k <= n; ++k) {
    DenseMatrix next(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next(i, j) = amk(i, j);
      next(i, i) += coeff[n - k + 1];
    }
    mk = std::move(next);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += a(i, l) * mk(l, j);
        amk(i, j) = s;
      }
    }
    coeff[n - k] = -amk.trace() / static_cast<double>(k);
  }
  return coeff;
}

OracleResult eigenvalues_charpoly(const SymmetricMatrix& a, std::size_t max_n) {
  const std::size_t n = a.size();
  if (n > max_n) {
    throw Error(ErrorCode::DimensionTooLarge,
                "characteristic-polynomial oracle limited to n <= " + std::to_string(max_n));
  }
  const double norm = a.frobenius_norm();
  // Every eigenvalue lies in [-|A|_2, |A|_2]; the slack keeps rounded roots inside.
  const double bound = norm * (1.0 + 1e-8) + 1e-12;
  const std::vector<double> coeff = characteristic_polynomial(a);
  std::vector<double> roots = real_roots(coeff, -bound, bound);
  if (roots.size() != n) {
    throw Error(ErrorCode::RootIsolationFailed, "isolated " + std::to_string(roots.size()) + " of " +
                                                    std::to_string(n) + " roots");
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return {std::move(roots), OracleMethod::CharPolyBisection, 1e-9 * std::max(1.0, norm)};
}

OracleResult by_construction(std::span<const double> spectrum, double certified_tol) {
  std::vector<double> values(spectrum.begin(), spectrum.end());
  std::sort(values.begin(), values.end(), std::greater<>());
  return {std::move(values), OracleMethod::ByConstruction, certified_tol};
}

double residual_check(const SymmetricMatrix& a, const EigenDecomposition& decomp) {
  const std::size_t n = a.size();
  if (decomp.eigenvalues.size() != n || decomp.eigenvectors.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "decomposition does not match matrix dimension");
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += a(i, j) * decomp.eigenvectors(j, c);
      const double r = av - decomp.eigenvalues[c] * decomp.eigenvectors(i, c);
      sq += r * r;
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

double orthogonality_error(const DenseMatrix& v) {
  const std::size_t n = v.size();
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += v(r, i) * v(r, j);
      const double e = dot - (i == j ? 1.0 : 0.0);
      sq += e * e;
    }
  }
  return std::sqrt(sq);
}

}  // namespace sqjacobi::oracle
