#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqjacobi/error.hpp"
#include "sqjacobi/io.hpp"

namespace sqjacobi::cli {

namespace {

std::string g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Options {
  std::string input;
  double tol = 1e-12;
  int max_sweeps = SolverConfig{}.max_sweeps;
  std::string method = "sqrt";
  std::string out;
  std::string format = "json";
  std::string rotations_out;
  std::string estimate_out;
  std::size_t n = 0;
  std::vector<double> spectrum;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

SolverConfig make_config(const Options& o) {
  SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_sweeps = o.max_sweeps;
  const auto method = parse_method(o.method);
  if (!method) throw Error(ErrorCode::InvalidConfig, "unknown method '" + o.method + "'");
  cfg.method = *method;
  cfg.validate();
  return cfg;
}

io::ReportFormat make_format(const std::string& name) {
  const auto f = io::parse_format(name);
  if (!f) throw Error(ErrorCode::InvalidConfig, "unknown format '" + name + "'");
  return *f;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

void print_summary(std::ostream& out, const SolveResult& r, Method method, std::size_t n) {
  out << "method: " << to_string(method) << "\n";
  out << "n: " << n << "\n";
  out << "sweeps: " << r.report.sweeps << "\n";
  out << "rotations: " << r.report.rotations_applied << "\n";
  out << "final_psi: " << g12(r.report.psi) << "\n";
  out << "converged: " << (r.converged() ? "true" : "false") << "\n";
  out << "eigenvalues:\n";
  for (double v : r.decomposition.eigenvalues) out << "  " << g12(v) << "\n";
}

int not_converged(std::ostream& err, const SolveResult& r) {
  err << "error: did not converge after " << r.report.sweeps << " sweeps (psi = " << g12(r.report.psi)
      << ", threshold = " << g12(r.report.threshold) << ")\n";
  return kNotConverged;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const SolverConfig cfg = make_config(o);
  const auto format = make_format(o.format);
  const SymmetricMatrix a = io::read_matrix_market(std::filesystem::path(o.input));
  const SolveResult r = solve(a, cfg);
  print_summary(out, r, cfg.method, a.size());
  if (!o.out.empty()) io::write_report(io::make_run_report(r, cfg.method, a.size()), o.out, format);
  return r.converged() ? kSuccess : not_converged(err, r);
}

nlohmann::ordered_json report_json(const SolveResult& r, Method method, std::size_t n) {
  return nlohmann::ordered_json::parse(io::to_json(io::make_run_report(r, method, n)));
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const SolverConfig cfg = make_config(o);
  const SymmetricMatrix a = io::read_matrix_market(std::filesystem::path(o.input));
  const CompareReport c = compare_methods(a, cfg);

  char line[256];
  out << "method  sweeps  rotations  final_psi           converged\n";
  for (const auto* run : {&c.sqrt_run, &c.givens_run}) {
    std::snprintf(line, sizeof(line), "%-7s %6d %10ld  %-18s  %s\n", run == &c.sqrt_run ? "sqrt" : "givens",
                  run->report.sweeps, run->report.rotations_applied, g12(run->report.psi).c_str(),
                  run->converged() ? "true" : "false");
    out << line;
  }
  out << "eigenvalues (sqrt | givens):\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << "  " << g12(c.sqrt_run.decomposition.eigenvalues[i]) << " | "
        << g12(c.givens_run.decomposition.eigenvalues[i]) << "\n";
  }
  out << "max_eigenvalue_gap: " << g12(c.max_eigenvalue_gap) << " (tolerance " << g12(c.tolerance) << ")\n";
  out << "first-sweep pivots: p q x theta cos(2theta)/2 quadrant mapped_error\n";
  for (const auto& pc : c.pivots) {
    std::snprintf(line, sizeof(line), "  %zu %zu %s %s %s %s %.3g\n", pc.p + 1, pc.q + 1, g12(pc.x).c_str(),
                  g12(pc.theta).c_str(), g12(pc.cos2theta_half).c_str(),
                  pc.skipped ? "skip" : (pc.same_quadrant ? "same" : "shifted"), pc.mapped_error);
    out << line;
  }
  out << "mismatched_quadrant: " << c.mismatched_quadrant << " of " << c.pivots.size() << "\n";

  if (!o.out.empty()) {
    nlohmann::ordered_json j;
    j["sqrt"] = report_json(c.sqrt_run, Method::SqrtRotation, a.size());
    j["givens"] = report_json(c.givens_run, Method::GivensRotation, a.size());
    j["max_eigenvalue_gap"] = c.max_eigenvalue_gap;
    j["agree"] = c.agree;
    j["mismatched_quadrant"] = c.mismatched_quadrant;
    auto& pivots = j["pivots"] = nlohmann::ordered_json::array();
    for (const auto& pc : c.pivots) {
      pivots.push_back({{"p", pc.p + 1},
                        {"q", pc.q + 1},
                        {"skipped", pc.skipped},
                        {"x", pc.x},
                        {"theta", pc.theta},
                        {"cos2theta_half", pc.cos2theta_half},
                        {"same_quadrant", pc.same_quadrant},
                        {"mapped_error", pc.mapped_error}});
    }
    write_file(o.out, j.dump(2) + "\n");
  }

  if (!c.sqrt_run.converged()) return not_converged(err, c.sqrt_run);
  if (!c.givens_run.converged()) return not_converged(err, c.givens_run);
  if (!c.agree) {
    err << "error: methods disagree: max eigenvalue gap " << g12(c.max_eigenvalue_gap) << " exceeds "
        << g12(c.tolerance) << "\n";
    return kMethodsDisagree;
  }
  return kSuccess;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream&) {
  io::MatrixSpec spec;
  spec.n = o.n;
  spec.seed = o.seed;
  spec.entry_scale = o.scale;
  if (!o.spectrum.empty()) spec.spectrum = o.spectrum;
  const SymmetricMatrix a = io::generate_symmetric(spec);
  if (o.out.empty()) {
    io::write_matrix_market(a, out);
    return kSuccess;
  }
  io::write_matrix_market(a, std::filesystem::path(o.out));
  out << "wrote " << o.n << "x" << o.n << " matrix to " << o.out << "\n";
  if (spec.spectrum) {
    out << "spectrum:";
    for (double v : *spec.spectrum) out << " " << g12(v);
    out << "\n";
  }
  return kSuccess;
}

std::string estimate_csv(const ConvergenceEstimate& e) {
  std::string s = "k,psi_k,psi_k_plus_n,bound,satisfied\n";
  for (const auto& obs : e.observations) {
    s += std::to_string(obs.k) + "," + io::format_double(obs.psi_k) + "," + io::format_double(obs.psi_k_plus_n) +
         "," + io::format_double(obs.bound) + "," + (obs.satisfied ? "1" : "0") + "\n";
  }
  return s;
}

void print_estimate(std::ostream& out, const SolveResult& r, std::size_t n) {
  if (!r.estimate) {
    const double gap = min_eigenvalue_gap(r.decomposition.eigenvalues);
    std::string why = "insufficient history";
    if (n < 2) {
      why = "n < 2";
    } else if (!(gap > 0.0)) {
      why = "minimum eigenvalue gap is 0";
    }
    out << "# quadratic estimate: skipped (" << why << ")\n";
    return;
  }
  const ConvergenceEstimate& e = *r.estimate;
  out << "# quadratic estimate: gap_delta=" << g12(e.gap_delta) << " N=" << e.rotations_per_sweep
      << " threshold=" << g12(e.asymptotic_threshold) << " noise_floor=" << g12(e.noise_floor) << "\n";
  out << "# observations=" << e.observations.size() << " violations=" << e.violations
      << " violations_below_threshold=" << e.violations_below_threshold << "\n";
  out << "# onset_index=" << (e.onset_index ? std::to_string(*e.onset_index) : std::string("none")) << "\n";
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  SolverConfig cfg = make_config(o);
  cfg.record_rotations = true;
  cfg.analyze_convergence = true;
  const auto format = make_format(o.format);
  const SymmetricMatrix a = io::read_matrix_market(std::filesystem::path(o.input));
  const SolveResult r = solve(a, cfg);
  const io::RunReport report = io::make_run_report(r, cfg.method, a.size());

  if (o.out.empty()) {
    out << (format == io::ReportFormat::Json ? io::to_json(report) : io::history_csv(report));
  } else {
    io::write_report(report, o.out, format);
    out << "wrote " << (format == io::ReportFormat::Json ? "JSON report" : "sweep history") << " to " << o.out
        << "\n";
  }
  if (!o.rotations_out.empty()) {
    std::string s = "k,psi\n";
    for (std::size_t k = 0; k < r.report.rotation_psi.size(); ++k) {
      s += std::to_string(k) + "," + io::format_double(r.report.rotation_psi[k]) + "\n";
    }
    write_file(o.rotations_out, s);
  }
  if (!o.estimate_out.empty() && r.estimate) write_file(o.estimate_out, estimate_csv(*r.estimate));
  print_estimate(out, r, a.size());
  return r.converged() ? kSuccess : not_converged(err, r);
}

}  // namespace

CompareReport compare_methods(const SymmetricMatrix& a, SolverConfig config) {
  CompareReport c;
  const std::size_t n = a.size();

  config.method = Method::SqrtRotation;
  c.sqrt_run = solve(a, config, [&](const RotationEvent& ev) {
    if (ev.sweep != 1) return;
    PivotComparison pc;
    pc.p = ev.before.p;
    pc.q = ev.before.q;
    pc.skipped = ev.before.a_pq == 0.0;
    pc.x = pc.skipped ? identity_rotation().x : solve_pivot_parameter(ev.before);
    const PlaneRotation g = givens_schur(ev.before).plane();
    pc.theta = pc.skipped ? 0.0 : std::atan2(g.s, g.c);  // atan2(-0, 1) would print -0
    pc.cos2theta_half = 0.5 * std::cos(2.0 * pc.theta);
    pc.same_quadrant = pc.theta >= 0.0;
    const double mapped = pc.same_quadrant ? pc.theta : pc.theta + 0.5 * std::numbers::pi;
    pc.mapped_error = std::abs(pc.x - 0.5 * std::cos(2.0 * mapped));
    if (!pc.same_quadrant) ++c.mismatched_quadrant;
    c.pivots.push_back(pc);
  });

  config.method = Method::GivensRotation;
  c.givens_run = solve(a, config);

  for (std::size_t i = 0; i < n; ++i) {
    c.max_eigenvalue_gap = std::max(c.max_eigenvalue_gap, std::abs(c.sqrt_run.decomposition.eigenvalues[i] -
                                                                   c.givens_run.decomposition.eigenvalues[i]));
  }
  c.tolerance = kCompareRelTol * a.frobenius_norm();
  c.agree = c.max_eigenvalue_gap <= c.tolerance;
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense symmetric eigensolver: square-root and Givens cyclic Jacobi"};
  app.require_subcommand(1);
  Options o;

  auto add_solver_flags = [&](CLI::App* sub, bool with_method) {
    sub->add_option("input", o.input, "Matrix Market file")->required();
    sub->add_option("--tol", o.tol, "Relative stopping tolerance")->capture_default_str();
    sub->add_option("--max-sweeps", o.max_sweeps, "Maximum number of cyclic sweeps")->capture_default_str();
    if (with_method) {
      sub->add_option("--method", o.method, "Rotation: sqrt or givens")
          ->check(CLI::IsMember({"sqrt", "givens"}))
          ->capture_default_str();
    }
  };

  auto* solve_cmd = app.add_subcommand("solve", "Diagonalize a matrix and print its eigenvalues");
  add_solver_flags(solve_cmd, true);
  solve_cmd->add_option("--out", o.out, "Write the run report here");
  solve_cmd->add_option("--format", o.format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "Run both rotation methods and compare them");
  add_solver_flags(compare_cmd, false);
  compare_cmd->add_option("--out", o.out, "Write a JSON comparison here");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random symmetric matrix");
  gen_cmd->add_option("--n", o.n, "Dimension")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--spectrum", o.spectrum, "Prescribed eigenvalues, comma separated")->delimiter(',');
  gen_cmd->add_option("--seed", o.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--scale", o.scale, "Entry scale without a spectrum")->capture_default_str();
  gen_cmd->add_option("--out", o.out, "Output Matrix Market file (stdout when omitted)");

  auto* trace_cmd = app.add_subcommand("trace", "Record the off-norm history and check the quadratic estimate");
  add_solver_flags(trace_cmd, true);
  trace_cmd->add_option("--out", o.out, "Write the sweep history here (stdout when omitted)");
  trace_cmd->add_option("--format", o.format, "History format: csv or json")
      ->check(CLI::IsMember({"json", "csv"}));
  trace_cmd->add_option("--rotations", o.rotations_out, "Write the per-rotation history (k,psi) here");
  trace_cmd->add_option("--estimate", o.estimate_out, "Write per-k quadratic-estimate observations here");
  o.format = "json";
  trace_cmd->preparse_callback([&](std::size_t) { o.format = "csv"; });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*compare_cmd) return cmd_compare(o, out, err);
    if (*gen_cmd) return cmd_gen(o, out, err);
    return cmd_trace(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace sqjacobi::cli
