#include "sqjacobi/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sqjacobi/error.hpp"

namespace sqjacobi::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    parse_fail(line, "cannot parse '" + std::string(tok) + "' as a real number");
  }
  return v;
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    parse_fail(line, "cannot parse '" + std::string(tok) + "' as an index");
  }
  return v;
}

enum class Layout { Coordinate, Array };
enum class Symmetry { General, Symmetric };

struct Header {
  Layout layout;
  Symmetry symmetry;
};

Header parse_header(const std::string& text) {
  const auto tok = split_ws(text);
  if (tok.size() != 5 || tok[0] != "%%MatrixMarket") {
    parse_fail(1, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  }
  if (lower(std::string(tok[1])) != "matrix") parse_fail(1, "object must be 'matrix'");

  Header h{};
  const std::string format = lower(std::string(tok[2]));
  if (format == "coordinate") {
    h.layout = Layout::Coordinate;
  } else if (format == "array") {
    h.layout = Layout::Array;
  } else {
    parse_fail(1, "unknown format '" + format + "'");
  }

  const std::string field = lower(std::string(tok[3]));
  if (field == "complex" || field == "pattern") {
    throw Error(ErrorCode::UnsupportedField, "field '" + field + "' is not supported");
  }
  if (field != "real" && field != "integer" && field != "double") {
    parse_fail(1, "unknown field '" + field + "'");
  }

  const std::string sym = lower(std::string(tok[4]));
  if (sym == "general") {
    h.symmetry = Symmetry::General;
  } else if (sym == "symmetric") {
    h.symmetry = Symmetry::Symmetric;
  } else if (sym == "skew-symmetric" || sym == "hermitian") {
    throw Error(ErrorCode::UnsupportedField, "symmetry '" + sym + "' is not supported");
  } else {
    parse_fail(1, "unknown symmetry '" + sym + "'");
  }
  return h;
}

// Data lines with their 1-based line numbers; comments and blanks dropped.
struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

SymmetricMatrix read_matrix_market(std::istream& in, double sym_tol) {
  std::string header_text;
  if (!std::getline(in, header_text)) parse_fail(1, "empty input");
  const Header header = parse_header(header_text);

  std::vector<std::string> storage;
  std::vector<std::size_t> numbers;
  {
    std::string text;
    std::size_t number = 1;
    while (std::getline(in, text)) {
      ++number;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      const auto first = text.find_first_not_of(" \t");
      if (first == std::string::npos || text[first] == '%') continue;
      storage.push_back(std::move(text));
      numbers.push_back(number);
    }
  }
  std::vector<Line> lines;
  lines.reserve(storage.size());
  for (std::size_t i = 0; i < storage.size(); ++i) lines.push_back({numbers[i], split_ws(storage[i])});
  if (lines.empty()) parse_fail(1, "missing size line");

  const Line& size_line = lines.front();
  const std::size_t want = header.layout == Layout::Coordinate ? 3 : 2;
  if (size_line.tokens.size() != want) {
    parse_fail(size_line.number, "size line needs " + std::to_string(want) + " integers");
  }
  const std::size_t rows = parse_index(size_line.tokens[0], size_line.number);
  const std::size_t cols = parse_index(size_line.tokens[1], size_line.number);
  if (rows != cols) {
    throw Error(ErrorCode::NonSquare, "matrix is " + std::to_string(rows) + " x " + std::to_string(cols));
  }
  if (rows == 0) parse_fail(size_line.number, "matrix dimension is 0");
  const std::size_t n = rows;

  DenseMatrix m(n);
  std::vector<bool> seen(n * n, false);
  auto place = [&](std::size_t i, std::size_t j, double v, std::size_t line) {
    if (seen[i * n + j]) parse_fail(line, "duplicate entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    seen[i * n + j] = true;
    m(i, j) = v;
    if (header.symmetry == Symmetry::Symmetric && i != j) {
      if (seen[j * n + i]) parse_fail(line, "entry given in both triangles");
      seen[j * n + i] = true;
      m(j, i) = v;
    }
  };

  if (header.layout == Layout::Coordinate) {
    const std::size_t nnz = parse_index(size_line.tokens[2], size_line.number);
    if (lines.size() - 1 != nnz) {
      parse_fail(lines.back().number, "expected " + std::to_string(nnz) + " entries, found " +
                                          std::to_string(lines.size() - 1));
    }
    for (std::size_t e = 1; e < lines.size(); ++e) {
      const Line& l = lines[e];
      if (l.tokens.size() != 3) parse_fail(l.number, "coordinate entry needs 'row col value'");
      const std::size_t i = parse_index(l.tokens[0], l.number);
      const std::size_t j = parse_index(l.tokens[1], l.number);
      if (i < 1 || i > n || j < 1 || j > n) parse_fail(l.number, "index out of range");
      place(i - 1, j - 1, parse_real(l.tokens[2], l.number), l.number);
    }
  } else {
    // Column-major; symmetric arrays list the lower triangle only.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = header.symmetry == Symmetry::Symmetric ? j : 0; i < n; ++i) order.emplace_back(i, j);
    }
    std::size_t next = 0;
    for (std::size_t e = 1; e < lines.size(); ++e) {
      for (auto tok : lines[e].tokens) {
        if (next == order.size()) parse_fail(lines[e].number, "too many array values");
        place(order[next].first, order[next].second, parse_real(tok, lines[e].number), lines[e].number);
        ++next;
      }
    }
    if (next != order.size()) {
      parse_fail(lines.back().number, "expected " + std::to_string(order.size()) + " values, found " +
                                          std::to_string(next));
    }
  }

  if (header.symmetry == Symmetry::Symmetric) return make_symmetric_exact(std::move(m));
  return validate_symmetric(m, sym_tol);
}

SymmetricMatrix read_matrix_market(const std::filesystem::path& path, double sym_tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_matrix_market(in, sym_tol);
}

void write_matrix_market(const SymmetricMatrix& m, std::ostream& out) {
  const std::size_t n = m.size();
  std::size_t nnz = 0;
  auto stored = [&](std::size_t i, std::size_t j) { return std::bit_cast<std::uint64_t>(m(i, j)) != 0; };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) nnz += stored(i, j) ? 1 : 0;

  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << n << ' ' << n << ' ' << nnz << '\n';
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      if (stored(i, j)) out << (i + 1) << ' ' << (j + 1) << ' ' << format_double(m(i, j)) << '\n';
    }
  }
}

void write_matrix_market(const SymmetricMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  write_matrix_market(m, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

// ---- generation -------------------------------------------------------------

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

double SplitMix64::normal() noexcept {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

void MatrixSpec::validate() const {
  if (n == 0) throw Error(ErrorCode::BadSpec, "n must be >= 1");
  if (!(entry_scale > 0.0) || !std::isfinite(entry_scale)) {
    throw Error(ErrorCode::BadSpec, "entry_scale must be positive and finite");
  }
  if (spectrum) {
    if (spectrum->size() != n) {
      throw Error(ErrorCode::BadSpec, "spectrum has " + std::to_string(spectrum->size()) +
                                          " values, expected " + std::to_string(n));
    }
    for (double v : *spectrum) {
      if (!std::isfinite(v)) throw Error(ErrorCode::BadSpec, "spectrum values must be finite");
    }
  }
}

DenseMatrix random_orthogonal(std::size_t n, SplitMix64& rng) {
  DenseMatrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.normal();

  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw Error(ErrorCode::BadSpec, "random basis is rank deficient");
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

SymmetricMatrix generate_symmetric(const MatrixSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  SplitMix64 rng(spec.seed);

  if (spec.spectrum) {
    const DenseMatrix q = random_orthogonal(n, rng);
    const std::vector<double>& lambda = *spec.spectrum;
    return SymmetricMatrix::from_lower(n, [&](std::size_t i, std::size_t j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * lambda[k] * q(j, k);
      return s;
    });
  }

  DenseMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = rng.uniform(-spec.entry_scale, spec.entry_scale);
  return SymmetricMatrix::from_lower(n, [&](std::size_t i, std::size_t j) {
    return 0.5 * r(i, j) + 0.5 * r(j, i);
  });
}

// ---- reports ----------------------------------------------------------------

std::optional<ReportFormat> parse_format(std::string_view name) noexcept {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

RunReport make_run_report(const SolveResult& result, Method method, std::size_t n) {
  RunReport r;
  r.method = std::string(to_string(method));
  r.n = n;
  r.sweeps = result.report.sweeps;
  r.rotations = result.report.rotations_applied;
  r.psi_history = result.report.psi_history;
  r.eigenvalues = result.decomposition.eigenvalues;
  r.wall_time_ms = result.report.wall_time_ms;
  r.converged = result.report.converged;
  return r;
}

std::string to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["n"] = report.n;
  j["sweeps"] = report.sweeps;
  j["rotations"] = report.rotations;
  j["psi_history"] = report.psi_history;
  j["eigenvalues"] = report.eigenvalues;
  j["wall_time_ms"] = report.wall_time_ms;
  j["converged"] = report.converged;
  return j.dump(2) + "\n";
}

std::string history_csv(const RunReport& report) {
  std::string out = "sweep,psi\n";
  for (std::size_t i = 0; i < report.psi_history.size(); ++i) {
    out += std::to_string(i) + "," + format_double(report.psi_history[i]) + "\n";
  }
  return out;
}

std::string summary_csv(const RunReport& report) {
  std::ostringstream out;
  out << "key,value\n";
  out << "method," << report.method << "\n";
  out << "n," << report.n << "\n";
  out << "sweeps," << report.sweeps << "\n";
  out << "rotations," << report.rotations << "\n";
  out << "final_psi," << format_double(report.psi_history.empty() ? 0.0 : report.psi_history.back()) << "\n";
  out << "wall_time_ms," << format_double(report.wall_time_ms) << "\n";
  out << "converged," << (report.converged ? "true" : "false") << "\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    out << "eigenvalue_" << (i + 1) << "," << format_double(report.eigenvalues[i]) << "\n";
  }
  return out.str();
}

std::filesystem::path summary_path_for(const std::filesystem::path& csv_path) {
  std::filesystem::path out = csv_path;
  const std::string ext = csv_path.has_extension() ? csv_path.extension().string() : std::string(".csv");
  out.replace_filename(csv_path.stem().string() + ".summary" + ext);
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace

void write_report(const RunReport& report, const std::filesystem::path& path, ReportFormat format) {
  if (format == ReportFormat::Json) {
    write_text(path, to_json(report));
    return;
  }
  write_text(path, history_csv(report));
  write_text(summary_path_for(path), summary_csv(report));
}

}  // namespace sqjacobi::io
