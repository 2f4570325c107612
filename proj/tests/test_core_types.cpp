#include <doctest.h>

#include <cmath>
#include <limits>

#include "sqjacobi/error.hpp"
#include "sqjacobi/matrix.hpp"
#include "sqjacobi/solver.hpp"
#include "support.hpp"

using namespace sqjacobi;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an sqjacobi::Error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("core_types") {

TEST_CASE("identity 3x3 is accepted unchanged") {
  const DenseMatrix id = DenseMatrix::identity(3);
  const SymmetricMatrix s = validate_symmetric(id, 1e-12);
  CHECK(s.dense() == id);
  CHECK(s.size() == 3);
}

TEST_CASE("worked 3x3 example validates") {
  const SymmetricMatrix s = validate_symmetric(Grid{{1, 0, 2}, {0, 3, 0}, {2, 0, 4}});
  CHECK(s(0, 2) == 2.0);
  CHECK(s(2, 0) == 2.0);
  CHECK(s.trace() == 8.0);
}

TEST_CASE("maximally asymmetric 2x2 is rejected") {
  CHECK(code_of([] { validate_symmetric(Grid{{0, 1}, {0, 0}}); }) == ErrorCode::AsymmetryExceeded);
}

TEST_CASE("validation error paths") {
  CHECK(code_of([] { validate_symmetric(Grid{{1, 2}, {3}}); }) == ErrorCode::NonSquare);
  CHECK(code_of([] { validate_symmetric(Grid{{1, 2, 3}, {2, 1, 0}}); }) == ErrorCode::NonSquare);
  CHECK(code_of([] { validate_symmetric(Grid{}); }) == ErrorCode::DegenerateInput);
  CHECK(code_of([] {
          validate_symmetric(Grid{{1, std::numeric_limits<double>::quiet_NaN()}, {0, 1}});
        }) == ErrorCode::NonFinite);
  CHECK(code_of([] {
          validate_symmetric(Grid{{std::numeric_limits<double>::infinity()}});
        }) == ErrorCode::NonFinite);
  CHECK(code_of([] { validate_symmetric(Grid{{1}}, 0.0); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { validate_symmetric(Grid{{1}}, -1.0); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("drift below the tolerance is averaged away") {
  // Tolerance is relative to max(1, |A|_F); here |A|_F ~ 2.
  const double d = 1e-13;
  const SymmetricMatrix s = validate_symmetric(Grid{{1, 1 + d}, {1 - d, 1}});
  CHECK(s(0, 1) == s(1, 0));
  CHECK(s(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(code_of([] { validate_symmetric(Grid{{1, 1 + 1e-9}, {1, 1}}); }) == ErrorCode::AsymmetryExceeded);
  // With a looser tolerance the same drift passes.
  CHECK_NOTHROW(validate_symmetric(Grid{{1, 1 + 1e-9}, {1, 1}}, 1e-6));
}

TEST_CASE("validate_symmetric is idempotent (property)") {
  io::SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next() % 9;
    DenseMatrix raw(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) raw(i, j) = rng.uniform(-10, 10);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) raw(j, i) = raw(i, j) * (1 + rng.uniform(-1e-14, 1e-14));
    const SymmetricMatrix once = validate_symmetric(raw);
    const SymmetricMatrix twice = validate_symmetric(once.dense());
    REQUIRE(test::bitwise_equal(once.dense(), twice.dense()));
    // Frobenius norm moves by at most sym_tol * |raw|_F.
    CHECK(std::abs(once.frobenius_norm() - raw.frobenius_norm()) <= kDefaultSymTol * raw.frobenius_norm());
    CHECK(max_abs_asymmetry(once.dense()) == 0.0);
  }
}

TEST_CASE("make_symmetric_exact demands exact mirroring") {
  DenseMatrix m = test::worked_example_dense();
  CHECK_NOTHROW(make_symmetric_exact(m));
  m(0, 2) = std::nextafter(2.0, 3.0);
  CHECK(code_of([&] { make_symmetric_exact(m); }) == ErrorCode::AsymmetryExceeded);
  CHECK(code_of([] { make_symmetric_exact(DenseMatrix{}); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("factories") {
  const SymmetricMatrix id = SymmetricMatrix::identity(4);
  CHECK(id.trace() == 4.0);
  CHECK(id.frobenius_norm() == 2.0);
  const std::vector<double> d{9, 4, 1};
  const SymmetricMatrix dg = SymmetricMatrix::diagonal(d);
  CHECK(dg(0, 0) == 9.0);
  CHECK(dg(2, 2) == 1.0);
  CHECK(dg(0, 1) == 0.0);
  const SymmetricMatrix lo = SymmetricMatrix::from_lower(3, [](std::size_t i, std::size_t j) { return 10.0 * i + j; });
  CHECK(lo(0, 2) == 20.0);
  CHECK(lo(2, 0) == 20.0);
}

TEST_CASE("frobenius norm does not overflow on huge entries") {
  DenseMatrix m(2, 1e200);
  CHECK(m.frobenius_norm() == doctest::Approx(2e200));
}

TEST_CASE("SolverConfig invariants") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.tol == 1e-12);
  CHECK(cfg.shift_delta == 0.5);

  auto bad = [](auto mutate) {
    SolverConfig c;
    mutate(c);
    return code_of([&] { c.validate(); });
  };
  CHECK(bad([](SolverConfig& c) { c.tol = 0; }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.tol = -1e-12; }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.tol = std::numeric_limits<double>::quiet_NaN(); }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.max_sweeps = -1; }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.shift_delta = 0.0; }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.shift_delta = 1.0; }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.shift_delta = 0.25; }) == ErrorCode::InvalidConfig);
  CHECK(bad([](SolverConfig& c) { c.gap_delta = 0.0; }) == ErrorCode::InvalidConfig);
}

TEST_CASE("method names round-trip") {
  CHECK(parse_method("sqrt") == Method::SqrtRotation);
  CHECK(parse_method("givens") == Method::GivensRotation);
  CHECK_FALSE(parse_method("qr").has_value());
  CHECK(to_string(Method::SqrtRotation) == "sqrt");
  CHECK(to_string(Method::GivensRotation) == "givens");
}

TEST_CASE("error codes carry their names") {
  const Error e(ErrorCode::ParseError, "boom");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(to_string(ErrorCode::ZeroOffDiagonal) == "ZeroOffDiagonal");
}

}
