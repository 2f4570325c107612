#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqjacobi/matrix.hpp"
#include "sqjacobi/solver.hpp"

namespace sqjacobi::io {

// ---- Matrix Market ---------------------------------------------------------

/// Reads "matrix coordinate|array real|integer symmetric|general". Symmetric
/// files mirror the stored triangle; general files go through
/// validate_symmetric(sym_tol). Throws ParseError (with line number),
/// UnsupportedField, AsymmetryExceeded, NonFinite, IoError.
SymmetricMatrix read_matrix_market(std::istream& in, double sym_tol = kDefaultSymTol);
SymmetricMatrix read_matrix_market(const std::filesystem::path& path,
                                   double sym_tol = kDefaultSymTol);

/// Coordinate symmetric, lower triangle, 17 significant digits. Entries that
/// are +0.0 are omitted; everything else (including -0.0) is written.
void write_matrix_market(const SymmetricMatrix& m, std::ostream& out);
void write_matrix_market(const SymmetricMatrix& m, const std::filesystem::path& path);

/// "%.17g" rendering shared by every text writer.
std::string format_double(double v);

// ---- Seeded generation -----------------------------------------------------

/// SplitMix64: 64-bit state, increment 0x9E3779B97F4A7C15, output mix
/// constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB, shifts 30/27/31.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Top 53 bits scaled into [0, 1).
  double uniform() noexcept;
  /// uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Box-Muller; both outputs of a pair are used in order.
  double normal() noexcept;

 private:
  std::uint64_t state_;
  std::optional<double> spare_;
};

struct MatrixSpec {
  std::size_t n = 1;
  std::optional<std::vector<double>> spectrum;
  std::uint64_t seed = 0;
  double entry_scale = 1.0;

  /// Throws BadSpec.
  void validate() const;
};

/// Orthogonal factor of an n x n matrix of standard normals drawn row-major,
/// orthonormalized column by column with two passes of modified Gram-Schmidt.
DenseMatrix random_orthogonal(std::size_t n, SplitMix64& rng);

/// Q diag(spectrum) Q^T when a spectrum is given, otherwise (R + R^T)/2 with
/// R uniform in [-entry_scale, entry_scale). Deterministic in `spec`.
SymmetricMatrix generate_symmetric(const MatrixSpec& spec);

// ---- Run reports -----------------------------------------------------------

enum class ReportFormat { Json, Csv };

std::optional<ReportFormat> parse_format(std::string_view name) noexcept;

struct RunReport {
  std::string method;
  std::size_t n = 0;
  int sweeps = 0;
  long rotations = 0;
  std::vector<double> psi_history;  // per sweep, entry 0 = input off-norm
  std::vector<double> eigenvalues;
  double wall_time_ms = 0.0;
  bool converged = false;
};

RunReport make_run_report(const SolveResult& result, Method method, std::size_t n);

/// JSON object with the RunReport fields in declaration order.
std::string to_json(const RunReport& report);
/// "sweep,psi" header and one row per psi_history entry.
std::string history_csv(const RunReport& report);
/// key,value rows with the scalar fields and the eigenvalues.
std::string summary_csv(const RunReport& report);

/// JSON: writes `path`. CSV: writes the history to `path` and the summary to
/// `summary_path_for(path)`. Throws IoError.
void write_report(const RunReport& report, const std::filesystem::path& path,
                  ReportFormat format);

std::filesystem::path summary_path_for(const std::filesystem::path& csv_path);

}  // namespace sqjacobi::io
