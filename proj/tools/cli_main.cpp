// unitary-finsler: batch experiment harness over the geometry suites.
// Tables (CSV or JSON rows) go to --out (stdout otherwise); the run summary
// JSON always ends on stdout; wall-clock timing goes to stderr so output
// bytes depend only on (config, platform).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "ufg/matrix_io.hpp"
#include "ufg/suites.hpp"

namespace {

constexpr const char* kArtifact = "unitary-finsler";
constexpr const char* kVersion = "0.1.0";

using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  std::uint64_t seed = 42;
  int dim = 4;
  int trials = 10;
  int p = 0;
  std::string norm = "operator";
  bool normalized = false;
  int grid = 64;
  std::string radius_policy = "conservative";
  std::string out;
  std::string format;
  std::string in;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "master seed; trial i uses seed XOR i");
  cmd->add_option("--dim", o.dim, "matrix dimension (half-dimension for nilpotent)");
  cmd->add_option("--trials", o.trials, "number of random instances");
  cmd->add_option("--p", o.p, "Schatten exponent (even)");
  cmd->add_option("--norm", o.norm, "operator | schatten")
      ->check(CLI::IsMember({"operator", "schatten"}));
  cmd->add_flag("--normalized", o.normalized, "use the normalized trace Tr/n");
  cmd->add_option("--grid", o.grid, "grid points along the geodesic parameter");
  cmd->add_option("--radius-policy", o.radius_policy, "conservative | paper")
      ->check(CLI::IsMember({"conservative", "paper"}));
  cmd->add_option("--out", o.out, "write the table here (stdout otherwise)");
  cmd->add_option("--format", o.format, "csv | json table format")
      ->check(CLI::IsMember({"csv", "json"}));
}

ufg::FinslerNorm resolve_norm(const Options& o) {
  if (o.norm == "operator" && o.p == 0 && !o.normalized) return ufg::FinslerNorm::op();
  const int p = o.p == 0 ? 4 : o.p;
  const ufg::FinslerNorm norm = o.normalized ? ufg::FinslerNorm::normalized_schatten(p)
                                             : ufg::FinslerNorm::schatten(p);
  norm.validate();
  return norm;
}

class TableWriter {
 public:
  TableWriter(const std::string& path, const std::string& format,
              const std::vector<std::string>& columns)
      : columns_(columns), csv_(format != "json") {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ufg::ConfigError("cannot open output file: " + path);
    }
    if (csv_) {
      std::string header;
      for (std::size_t i = 0; i < columns_.size(); ++i)
        header += (i ? "," : "") + columns_[i];
      line(header);
    } else {
      line("[");
    }
  }

  void row(const std::vector<std::string>& cells) {
    if (csv_) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
      line(out);
    } else {
      ordered_json obj;
      for (std::size_t i = 0; i < cells.size() && i < columns_.size(); ++i)
        obj[columns_[i]] = cells[i];
      line((first_ ? "  " : " ,") + obj.dump());
      first_ = false;
    }
  }

  void finish() {
    if (!csv_) line("]");
    if (file_.is_open()) file_.close();
  }

 private:
  void line(const std::string& s) {
    if (file_.is_open())
      file_ << s << '\n';
    else
      std::cout << s << '\n';
  }

  std::vector<std::string> columns_;
  bool csv_ = true;
  bool first_ = true;
  std::ofstream file_;
};

const char* verdict_name(ufg::ConvexityVerdict v) {
  switch (v) {
    case ufg::ConvexityVerdict::Convex: return "convex";
    case ufg::ConvexityVerdict::StrictlyConvex: return "strictly_convex";
    case ufg::ConvexityVerdict::Violated: return "violated";
    case ufg::ConvexityVerdict::OutOfDomain: return "out_of_domain";
  }
  return "?";
}

ordered_json config_echo(const Options& o, const ufg::FinslerNorm* norm) {
  ordered_json cfg;
  cfg["seed"] = o.seed;
  cfg["dim"] = o.dim;
  cfg["trials"] = o.trials;
  if (norm != nullptr) cfg["norm"] = norm->label();
  cfg["grid"] = o.grid;
  cfg["radius_policy"] = o.radius_policy;
  return cfg;
}

int finish_summary(ordered_json& summary, int failures, int errors,
                   std::chrono::steady_clock::time_point t0) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << summary.dump(2) << '\n';
  std::fprintf(stderr, "[%s] elapsed %.2fs\n", kArtifact, secs);
  if (errors > 0 || failures > 0) return 1;
  return 0;
}

int cmd_convexity(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ufg::FinslerNorm norm = resolve_norm(o);
  ufg::suites::ConvexityConfig cfg;
  cfg.seed = o.seed;
  cfg.dims = {o.dim};
  cfg.trials = o.trials;
  cfg.norm = norm;
  cfg.gridsize = o.grid;
  cfg.conservative_policy = o.radius_policy == "conservative";
  const auto results = ufg::suites::run_convexity(cfg);

  TableWriter table(o.out, o.format,
                    {"trial", "dim", "s", "g", "second_difference", "chain_lhs", "chain_mid",
                     "chain_rhs"});
  for (const auto& r : results) {
    if (!r.ok) continue;
    for (std::size_t i = 0; i < r.report.grid.size(); ++i) {
      std::vector<std::string> cells = {std::to_string(r.trial), std::to_string(r.dim),
                                        fmt17(r.report.grid[i]), fmt17(r.report.g_values[i])};
      if (i >= 1 && i + 1 < r.report.grid.size())
        cells.push_back(fmt17(r.report.second_differences[i - 1]));
      else
        cells.push_back("");
      if (i < r.report.inequality_slacks.size()) {
        cells.push_back(fmt17(r.report.inequality_slacks[i].lhs));
        cells.push_back(fmt17(r.report.inequality_slacks[i].mid));
        cells.push_back(fmt17(r.report.inequality_slacks[i].rhs));
      } else {
        cells.insert(cells.end(), {"", "", ""});
      }
      table.row(cells);
    }
  }
  table.finish();

  int passed = 0, failed = 0, errors = 0;
  ordered_json verdicts = {{"convex", 0}, {"strictly_convex", 0}, {"violated", 0},
                           {"out_of_domain", 0}};
  double worst_d2 = std::numeric_limits<double>::infinity();
  double worst_chain = -std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    if (!r.ok) {
      ++errors;
      verdicts["out_of_domain"] = verdicts["out_of_domain"].get<int>() + 1;
      continue;
    }
    (r.pass ? passed : failed) += 1;
    const char* name = verdict_name(r.report.verdict);
    verdicts[name] = verdicts[name].get<int>() + 1;
    worst_d2 = std::min(worst_d2, r.report.min_second_difference);
    worst_chain = std::max(worst_chain, r.worst_chain_violation);
  }
  ordered_json summary;
  summary["artifact"] = kArtifact;
  summary["version"] = kVersion;
  summary["suite"] = "convexity";
  summary["config"] = config_echo(o, &norm);
  summary["trials"] = o.trials;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  summary["verdicts"] = verdicts;
  summary["worst_second_difference"] = worst_d2;
  if (norm.kind != ufg::NormKind::Operator && norm.p >= 4)
    summary["worst_chain_violation"] = worst_chain;
  return finish_summary(summary, failed, errors, t0);
}

int cmd_lifting(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ufg::suites::LiftingConfig cfg;
  cfg.seed = o.seed;
  cfg.dims = {o.dim};
  cfg.trials = o.trials;
  const auto results = ufg::suites::run_lifting(cfg);

  TableWriter table(o.out, o.format.empty() ? "json" : o.format,
                    {"trial", "dim", "quotient", "lifting_norm", "cross_gap",
                     "worst_norm_slack", "worst_log_slack", "counterexample_detected",
                     "nonunique", "pass", "error"});
  int passed = 0, failed = 0, errors = 0;
  double worst_gap = 0.0, worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : results) {
    table.row({std::to_string(r.trial), std::to_string(r.dim), fmt17(r.quotient),
               fmt17(r.lifting_norm), fmt17(r.cross_gap), fmt17(r.worst_norm_slack),
               fmt17(r.worst_log_slack), r.counterexample_detected ? "1" : "0",
               r.nonunique ? "1" : "0", r.pass ? "1" : "0", r.error});
    if (!r.ok) {
      ++errors;
      continue;
    }
    (r.pass ? passed : failed) += 1;
    worst_gap = std::max(worst_gap, r.cross_gap);
    worst_slack = std::min(worst_slack, std::min(r.worst_norm_slack, r.worst_log_slack));
  }
  table.finish();
  ordered_json summary;
  summary["artifact"] = kArtifact;
  summary["version"] = kVersion;
  summary["suite"] = "lifting";
  summary["config"] = config_echo(o, nullptr);
  summary["trials"] = o.trials;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  summary["worst_cross_gap"] = worst_gap;
  summary["worst_certificate_slack"] = worst_slack;
  return finish_summary(summary, failed, errors, t0);
}

int cmd_projection(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ufg::suites::ProjectionConfig cfg;
  cfg.seed = o.seed;
  cfg.dims = {o.dim};
  cfg.trials = o.trials;
  const auto results = ufg::suites::run_projection(cfg);

  TableWriter table(o.out, o.format.empty() ? "json" : o.format,
                    {"trial", "dim", "kind", "conj_error", "znorm", "codiagonal",
                     "mismatch_expected", "mismatch_raised", "rotation_norm_gap",
                     "rotation_conj_gap", "pass", "error"});
  int passed = 0, failed = 0, errors = 0;
  for (const auto& r : results) {
    table.row({std::to_string(r.trial), std::to_string(r.dim), r.kind, fmt17(r.conj_error),
               fmt17(r.znorm), r.codiagonal ? "1" : "0", r.mismatch_expected ? "1" : "0",
               r.mismatch_raised ? "1" : "0", fmt17(r.rotation_norm_gap),
               fmt17(r.rotation_conj_gap), r.pass ? "1" : "0", r.error});
    if (!r.ok)
      ++errors;
    else
      (r.pass ? passed : failed) += 1;
  }
  table.finish();
  ordered_json summary;
  summary["artifact"] = kArtifact;
  summary["version"] = kVersion;
  summary["suite"] = "projection";
  summary["config"] = config_echo(o, nullptr);
  summary["trials"] = o.trials;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  return finish_summary(summary, failed, errors, t0);
}

int cmd_nilpotent(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ufg::suites::NilpotentConfig cfg;
  cfg.seed = o.seed;
  cfg.half = o.dim;
  cfg.trials = o.trials;
  const auto results = ufg::suites::run_nilpotent(cfg);

  TableWriter table(o.out, o.format.empty() ? "json" : o.format,
                    {"trial", "half", "delta_residual", "pairing_residual", "worst_norm_slack",
                     "worst_log_slack", "cross_section_error", "antisym_at_conjugate",
                     "hermitian_part_rejected", "pass", "error"});
  int passed = 0, failed = 0, errors = 0;
  for (const auto& r : results) {
    table.row({std::to_string(r.trial), std::to_string(r.half), fmt17(r.delta_residual),
               fmt17(r.pairing_residual), fmt17(r.worst_norm_slack), fmt17(r.worst_log_slack),
               fmt17(r.cross_section_error), r.antisym_at_conjugate ? "1" : "0",
               r.hermitian_part_rejected ? "1" : "0", r.pass ? "1" : "0", r.error});
    if (!r.ok)
      ++errors;
    else
      (r.pass ? passed : failed) += 1;
  }
  table.finish();
  ordered_json summary;
  summary["artifact"] = kArtifact;
  summary["version"] = kVersion;
  summary["suite"] = "nilpotent";
  summary["config"] = config_echo(o, nullptr);
  summary["trials"] = o.trials;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  return finish_summary(summary, failed, errors, t0);
}

int cmd_completion(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ufg::suites::CompletionConfig cfg;
  cfg.seed = o.seed;
  cfg.dims = {o.dim};
  cfg.trials = o.trials;
  const auto results = ufg::suites::run_completion(cfg);

  TableWriter table(o.out, o.format,
                    {"trial", "rows", "cols", "mu", "achieved", "gap", "singular_case",
                     "pass", "error"});
  int passed = 0, failed = 0, errors = 0;
  double worst_gap = 0.0;
  for (const auto& r : results) {
    table.row({std::to_string(r.trial), std::to_string(r.rows), std::to_string(r.cols),
               fmt17(r.mu), fmt17(r.achieved), fmt17(r.gap), r.singular_case ? "1" : "0",
               r.pass ? "1" : "0", r.error});
    if (!r.ok) {
      ++errors;
      continue;
    }
    (r.pass ? passed : failed) += 1;
    worst_gap = std::max(worst_gap, std::abs(r.gap));
  }
  table.finish();
  ordered_json summary;
  summary["artifact"] = kArtifact;
  summary["version"] = kVersion;
  summary["suite"] = "completion";
  summary["config"] = config_echo(o, nullptr);
  summary["trials"] = o.trials;
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["errors"] = errors;
  summary["worst_gap"] = worst_gap;
  return finish_summary(summary, failed, errors, t0);
}

int cmd_io_check(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ordered_json summary;
  summary["artifact"] = kArtifact;
  summary["version"] = kVersion;
  summary["suite"] = "io-check";
  int failed = 0;
  if (!o.in.empty()) {
    const ufg::Matrix m = ufg::read_matrix_json(o.in);  // ConfigError carries line/column
    summary["path"] = o.in;
    summary["dim"] = m.rows();
    summary["frobenius"] = m.norm();
    summary["hermitian_deviation"] = ufg::operator_norm(m - m.adjoint());
    summary["unitarity_deviation"] =
        ufg::operator_norm(m.adjoint() * m - ufg::Matrix::Identity(m.rows(), m.cols()));
    if (!o.out.empty()) ufg::write_matrix_json(o.out, m);
  } else {
    ufg::CounterRng rng(o.seed);
    const ufg::Matrix m = ufg::random_complex_gaussian(rng, o.dim);
    const ufg::Matrix back = ufg::parse_matrix_json(ufg::matrix_to_json(m));
    const bool exact = (back - m).norm() == 0.0;
    summary["round_trip_exact"] = exact;
    summary["dim"] = o.dim;
    if (!exact) failed = 1;
  }
  return finish_summary(summary, failed, 0, t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finsler geometry experiments on the unitary group: geodesic convexity, "
               "minimal liftings in unitary orbits, two-projection geodesics, and the "
               "Davis-Kahan-Weinberger completion"};
  app.require_subcommand(1);
  Options o;

  CLI::App* convexity = app.add_subcommand(
      "convexity", "geodesic distance convexity probes (operator or Schatten norms)");
  CLI::App* lifting = app.add_subcommand(
      "lifting", "minimal liftings and quotient norms in self-adjoint orbits");
  CLI::App* projection =
      app.add_subcommand("projection", "two-projection geodesics, including norm-one pairs");
  CLI::App* nilpotent = app.add_subcommand(
      "nilpotent", "order-two nilpotent orbit: cross section and closed-form liftings");
  CLI::App* completion =
      app.add_subcommand("completion", "minimal-norm Hermitian block completions");
  CLI::App* iocheck = app.add_subcommand("io-check", "matrix file validation / round trip");
  for (CLI::App* sc : {convexity, lifting, projection, nilpotent, completion, iocheck})
    add_common(sc, o);
  iocheck->add_option("--in", o.in, "matrix JSON file to validate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (convexity->parsed()) return cmd_convexity(o);
    if (lifting->parsed()) return cmd_lifting(o);
    if (projection->parsed()) return cmd_projection(o);
    if (nilpotent->parsed()) return cmd_nilpotent(o);
    if (completion->parsed()) return cmd_completion(o);
    if (iocheck->parsed()) return cmd_io_check(o);
  } catch (const ufg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ufg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
