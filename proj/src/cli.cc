// Copyright 2026 The RPDG Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rpdg/cli.h"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "rpdg/config.h"
#include "rpdg/error.h"
#include "rpdg/runner.h"
#include "rpdg/svg_plot.h"
#include "rpdg/trace_io.h"
#include "rpdg/worstcase.h"

namespace rpdg {
namespace {

// Failures while reading inputs are usage errors; failures once a run has
// started are solver errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig LoadConfigOrUsage(const std::string& path) {
  try {
    return LoadConfig(path);
  } catch (const Error& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
}

// An unreadable or malformed dataset is bad input, not a solver failure.
BuiltInstance BuildInstanceOrUsage(const RunConfig& config) {
  try {
    return BuildInstance(config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParse) throw;
    throw UsageError(fmt::format("{}: {}", config.instance.data, e.what()));
  }
}

std::string JoinPath(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

struct SolveArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool timing = false;
};

int Solve(const SolveArgs& args, std::ostream& err) {
  RunConfig config = LoadConfigOrUsage(args.config);
  if (args.timing) config.solver.timing = true;
  const std::uint64_t seed = args.seed.value_or(config.solver.seeds.front());
  const BuiltInstance built = BuildInstanceOrUsage(config);
  const RunOutcome outcome = RunSolve(config, built, seed);
  const std::string dir =
      args.out_dir.empty() ? ResolveOutputDir(config) : args.out_dir;
  const std::string path = JoinPath(
      dir, fmt::format("{}_seed{}.csv", config.output.prefix, seed));
  WriteTrace(path, outcome.trace);
  err << fmt::format("solve: method={} seed={} iterations={} grad_evals={}",
                     SolverMethodName(config.solver.method), seed,
                     outcome.iterations, outcome.grad_evals);
  if (outcome.budget && *outcome.budget > outcome.iterations) {
    err << fmt::format(" (budget {} capped at k_max)", *outcome.budget);
  }
  err << fmt::format(" -> {}\n", path);
  return kExitOk;
}

struct EnsembleArgs {
  std::string config;
  std::string out_dir;
};

int Ensemble(const EnsembleArgs& args, std::ostream& err) {
  const RunConfig config = LoadConfigOrUsage(args.config);
  const BuiltInstance built = BuildInstanceOrUsage(config);
  const EnsembleStats stats = RunEnsemble(config, built);
  const std::string dir =
      args.out_dir.empty() ? ResolveOutputDir(config) : args.out_dir;
  for (const auto& [name, series] :
       {std::pair<const char*, const SeriesStats*>{"dist", &stats.dist},
        {"gap", &stats.gap}}) {
    if (series->empty()) continue;
    const std::string path =
        JoinPath(dir, fmt::format("{}_{}.csv", config.output.prefix, name));
    WriteFile(path, FormatSeriesStats(*series, stats.m));
    err << fmt::format("ensemble: {} seeds, k_max={} -> {}\n", stats.seeds,
                       stats.k_max, path);
  }
  return kExitOk;
}

struct LowerBoundArgs {
  int m = 4;
  double Q = 100.0;
  double mu = 1.0;
  int n_tilde = 0;
  int seeds = 200;
  std::uint64_t seed_base = 1;
  std::int64_t k_max = 300;
  std::string schedule = "rpdg_nonuniform";
  int threads = 0;
  std::string out_dir;
  bool check = false;
};

int LowerBound(const LowerBoundArgs& args, std::ostream& err) {
  ScheduleKind kind;
  try {
    kind = ParseScheduleKind(args.schedule);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (args.seeds < 2) throw UsageError("--seeds must be >= 2");
  WorstCaseSpec spec{args.m, args.n_tilde, args.mu, args.Q};
  if (spec.n_tilde == 0) {
    spec.n_tilde = MinimumDimension(args.m, args.Q, args.k_max).n_tilde;
  }
  const SandwichReport report = RunBoundSandwich(
      spec, kind, SeedRange(args.seed_base, args.seeds), args.k_max,
      args.threads);

  std::string csv = "k,lower,mean_ratio,se_ratio,upper\n";
  for (std::size_t k = 0; k < report.mean_ratio.size(); ++k) {
    csv += fmt::format("{},{},{},{},{}\n", k + 1, FormatDouble(report.lower[k]),
                       FormatDouble(report.mean_ratio[k]),
                       FormatDouble(report.se_ratio[k]),
                       FormatDouble(report.upper[k]));
  }
  const std::string dir = args.out_dir.empty()
                              ? ResolveOutputDir(RunConfig{})
                              : args.out_dir;
  const std::string path = JoinPath(
      dir, fmt::format("lowerbound_m{}_Q{}_{}.csv", args.m, args.Q,
                       ScheduleKindName(kind)));
  WriteFile(path, csv);

  err << report.Header() << "\n";
  err << fmt::format("lower violations: {}, upper violations: {}\n",
                     report.lower_violations, report.upper_violations);
  if (report.crossing_grad_evals) {
    err << fmt::format("grad evals to ratio {:g}: {} (budget {})\n",
                       kCrossingLevel, *report.crossing_grad_evals,
                       report.crossing_budget);
  }
  err << fmt::format("sandwich {} -> {}\n", report.ok() ? "holds" : "FAILS",
                     path);
  return args.check && !report.ok() ? kExitCheckFailed : kExitOk;
}

struct ValidateArgs {
  std::string config;
  bool check = false;
};

int Validate(const ValidateArgs& args, std::ostream& out) {
  const RunConfig config = LoadConfigOrUsage(args.config);
  const BuiltInstance built = BuildInstanceOrUsage(config);
  const ConditionReport report = ValidateRun(config, built);
  for (const ConditionCheck& c : report.checks) {
    out << fmt::format(
        "{} {} slack={:.6e} relative_slack={:.6e} lhs={:.6e} rhs={:.6e} "
        "worst_index={}\n",
        c.passed ? "ok  " : "FAIL", c.name, c.slack, c.relative_slack, c.lhs,
        c.rhs, c.worst_index);
  }
  return args.check && !report.ok() ? kExitCheckFailed : kExitOk;
}

struct PlotArgs {
  std::vector<std::string> traces;
  std::string out;
  std::string x_axis = "iteration";
  std::string column = "dist_P";
  bool bounds = false;
  std::string config;
  std::string title;
};

std::optional<double> Column(const TraceRow& row, std::string_view column) {
  if (column == "dist_P") return row.dist_p;
  if (column == "obj") return row.obj;
  if (column == "obj_ergodic") return row.obj_ergodic;
  if (column == "bound_upper") return row.bound_upper;
  return row.bound_lower;
}

int Plot(const PlotArgs& args, std::ostream& err) {
  PlotOptions options;
  options.title = args.title;
  options.x_label = args.x_axis;
  options.y_label = args.column;
  std::string digest_source;
  if (!args.config.empty()) {
    options.digest = ConfigDigest(LoadConfigOrUsage(args.config));
  }

  std::vector<PlotSeries> series;
  for (const std::string& path : args.traces) {
    std::string text;
    Trace trace;
    try {
      text = ReadFile(path);
      trace = ParseTrace(text);
    } catch (const Error& e) {
      throw UsageError(fmt::format("{}: {}", path, e.what()));
    }
    digest_source += text;
    const std::string stem = std::filesystem::path(path).stem().string();
    std::vector<std::string_view> columns{args.column};
    if (args.bounds) columns.insert(columns.end(), {"bound_upper", "bound_lower"});
    for (std::string_view column : columns) {
      PlotSeries s;
      s.label = columns.size() == 1 ? stem : fmt::format("{} {}", stem, column);
      bool any = false;
      for (const TraceRow& row : trace.rows) {
        const std::optional<double> y = Column(row, column);
        any = any || y.has_value();
        s.x.push_back(static_cast<double>(
            args.x_axis == "grad_evals" ? row.grad_evals : row.t));
        s.y.push_back(y.value_or(std::nan("")));
      }
      if (any) series.push_back(std::move(s));
    }
  }
  if (options.digest.empty()) {
    options.digest = fmt::format("traces:{:016x}", Fnv1a64(digest_source));
  }
  WriteFile(args.out, RenderSvg(series, options));
  err << fmt::format("plot: {} series -> {}\n", series.size(), args.out);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Benchmarks for primal-dual gradient methods on finite sums",
               "rpdg_bench"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run one seed, write a trace");
  solve_cmd->add_option("--config", solve.config, "Run config (INI)")->required();
  solve_cmd->add_option("--seed", solve.seed, "Seed (default: first config seed)");
  solve_cmd->add_option("--out", solve.out_dir, "Output directory");
  solve_cmd->add_flag("--timing", solve.timing, "Fill the wall_ns column");

  EnsembleArgs ensemble;
  CLI::App* ensemble_cmd =
      app.add_subcommand("ensemble", "Run all config seeds, write summaries");
  ensemble_cmd->add_option("--config", ensemble.config, "Run config (INI)")
      ->required();
  ensemble_cmd->add_option("--out", ensemble.out_dir, "Output directory");

  LowerBoundArgs lower;
  CLI::App* lower_cmd = app.add_subcommand(
      "lowerbound", "Compare RPDG on the worst-case family with both bounds");
  lower_cmd->add_option("--m", lower.m, "Components")->check(CLI::PositiveNumber);
  lower_cmd->add_option("--Q", lower.Q, "Condition parameter (> 1)");
  lower_cmd->add_option("--mu", lower.mu, "Strong convexity modulus");
  lower_cmd->add_option("--n-tilde", lower.n_tilde,
                        "Block size; 0 picks the smallest admissible");
  lower_cmd->add_option("--seeds", lower.seeds, "Number of seeds");
  lower_cmd->add_option("--seed-base", lower.seed_base, "First seed");
  lower_cmd->add_option("--kmax", lower.k_max, "Iterations")
      ->check(CLI::PositiveNumber);
  lower_cmd->add_option("--schedule", lower.schedule,
                        "rpdg_nonuniform or rpdg_uniform");
  lower_cmd->add_option("--threads", lower.threads, "Worker threads (0 = all)");
  lower_cmd->add_option("--out", lower.out_dir, "Output directory");
  lower_cmd->add_flag("--check", lower.check, "Exit 3 if the sandwich fails");

  ValidateArgs validate;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check the schedule conditions of a config");
  validate_cmd->add_option("--config", validate.config, "Run config (INI)")
      ->required();
  validate_cmd->add_flag("--check", validate.check,
                         "Exit 3 if a condition fails");

  PlotArgs plot;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Render traces to SVG");
  plot_cmd->add_option("traces", plot.traces, "Trace CSV files")->required();
  plot_cmd->add_option("--out", plot.out, "SVG file")->required();
  plot_cmd->add_option("--x", plot.x_axis, "x axis")
      ->check(CLI::IsMember({"iteration", "grad_evals"}));
  plot_cmd->add_option("--column", plot.column, "Trace column")
      ->check(CLI::IsMember(
          {"dist_P", "obj", "obj_ergodic", "bound_upper", "bound_lower"}));
  plot_cmd->add_flag("--bounds", plot.bounds, "Overlay the bound columns");
  plot_cmd->add_option("--config", plot.config, "Config whose digest to embed");
  plot_cmd->add_option("--title", plot.title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return Solve(solve, err);
    if (*ensemble_cmd) return Ensemble(ensemble, err);
    if (*lower_cmd) return LowerBound(lower, err);
    if (*validate_cmd) return Validate(validate, out);
    if (*plot_cmd) return Plot(plot, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}

}  // namespace rpdg
