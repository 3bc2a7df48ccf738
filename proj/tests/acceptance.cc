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


// Acceptance gate: one PASS/FAIL line per criterion. The exit status is
// nonzero only for failures not listed as known below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "rpdg/cli.h"
#include "rpdg/dataset.h"
#include "rpdg/ensemble.h"
#include "rpdg/error.h"
#include "rpdg/instances.h"
#include "rpdg/pdg.h"
#include "rpdg/rpdg.h"
#include "rpdg/sampler.h"
#include "rpdg/schedule.h"
#include "rpdg/smoothing.h"
#include "rpdg/trace_io.h"
#include "rpdg/worstcase.h"
#include "rpdg/wrappers.h"
#include "test_util.h"

namespace rpdg {
namespace {

using ::rpdg::testing::Gen;
using Vec = Eigen::VectorXd;

struct Outcome {
  bool pass = false;
  std::string detail;
  // Set when a failure is fully explained by a documented limitation.
  bool explained = false;
};

struct Criterion {
  int id;
  std::string_view name;
  double time_limit_s;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------------------
// 1. PDG distance bound on the worst-case instance.

// P(x, x*) when every coordinate of x is two ulps away from x*: the smallest
// distance float64 can be relied on to resolve.
double UlpFloor(const Vec& x_star) {
  double sum = 0.0;
  for (double v : x_star) {
    const double ulp = std::nextafter(std::abs(v), 1.0) - std::abs(v);
    sum += 4.0 * ulp * ulp;
  }
  return 0.5 * sum;
}

Outcome PdgDistanceBound() {
  const WorstCaseSpec spec{.m = 1, .n_tilde = 64, .mu = 1.0, .Q = 9.0};
  const ProblemInstance p = BuildWorstCase(spec);
  const SolveResult r = RunPdg(p, PdgStronglyConvex(p.lip_f, p.mu), Vec::Zero(p.n),
                               {.k_max = 500, .record = {.objective = false}});
  const double floor = UlpFloor(*p.opt_x);
  std::optional<std::int64_t> first_violation;
  std::int64_t violations = 0;
  bool all_below_floor = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : r.trace.rows) {
    const double slack = (*row.bound_upper - *row.dist_p) / *row.bound_upper;
    worst = std::min(worst, slack);
    if (slack < -1e-9) {
      ++violations;
      if (!first_violation) first_violation = row.t;
      all_below_floor = all_below_floor && *row.dist_p <= floor;
    }
  }
  if (!first_violation) {
    return {true, fmt::format("worst relative slack {:.3g} over k <= 500", worst)};
  }
  const TraceRow& at = r.trace.rows[*first_violation - 1];
  const TraceRow& last = r.trace.rows.back();
  return {false,
          fmt::format("holds for k < {}; {} of 500 k violate. At k = {} P = {:.3g} "
                      "vs bound {:.3g}; P ends at {:.3g} vs bound {:.3g}. The "
                      "iterate sits within two ulps of x* per coordinate (P floor "
                      "{:.3g}), so the bound falls below float64 resolution",
                      *first_violation, violations, *first_violation, *at.dist_p,
                      *at.bound_upper, *last.dist_p, *last.bound_upper, floor),
          all_below_floor};
}

// ---------------------------------------------------------------------------
// 2. PDG ergodic gap bound for mu = 0.

Outcome PdgGapBound() {
  const ProblemInstance p = MakeRandomQuadratic(4, 10, 0.0, 100.0, 3);
  const double psi_star = ObjectiveValue(p, *p.opt_x);
  Gen gen(2);
  const SolveResult r =
      RunPdg(p, PdgNonStrongly(p.lip_f), gen.Vector(10, 2.0), {.k_max = 200});
  double worst = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : r.trace.rows) {
    const double gap = *row.obj_ergodic - psi_star;
    worst = std::min(worst, (*row.bound_upper - gap) / *row.bound_upper);
    if (gap > *row.bound_upper) {
      return {false, fmt::format("k = {}: gap {:.6g} > bound {:.6g}", row.t, gap,
                                 *row.bound_upper)};
    }
  }
  return {true, fmt::format("min relative slack {:.3g} over k <= 200", worst)};
}

// ---------------------------------------------------------------------------
// 3. AG and PDG iterates coincide.

Outcome AgEquivalence() {
  Gen gen(3);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const bool strongly = trial % 2 == 0;
    const ProblemInstance p =
        testing::RandomSpdInstance(gen, 3, 10, strongly ? 0.05 : 0.0, 0.05, 3.0);
    const Vec x0 = gen.Vector(10);
    std::vector<Vec> ag;
    const Schedule s =
        strongly ? PdgStronglyConvex(p.lip_f, p.mu) : PdgNonStrongly(p.lip_f);
    if (strongly) {
      const double lambda = 1.0 / (1.0 + s.tau);
      ag = RunNesterovAg(
          p, [&](std::int64_t) { return lambda; },
          [&](std::int64_t) { return s.eta; }, x0, 100);
    } else {
      ag = RunNesterovAg(
          p, [](std::int64_t t) { return 2.0 / (t + 1.0); },
          [&](std::int64_t t) { return 4.0 * p.lip_f / t; }, x0, 100);
    }
    PdgState state = PdgInit(p, x0);
    for (int t = 1; t <= 100; ++t) {
      PdgStep(p, s.At(t), state);
      worst = std::max(worst, testing::SupNorm(state.x_prev, ag[t - 1]));
    }
  }
  return {worst <= 1e-10,
          fmt::format("max sup-norm difference {:.3g} (5 quadratics, 100 iterations)",
                      worst)};
}

// ---------------------------------------------------------------------------
// 4. RPDG with m = 1 is PDG.

Outcome SingleComponentReduction() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ProblemInstance p = MakeRandomQuadratic(1, 10, 0.1, 100.0, seed);
    const Schedule s = RpdgNonuniform(p.lip, p.mu);
    const Vec x0 = Vec::Ones(10);
    PdgState pdg = PdgInit(p, x0);
    RpdgState rpdg = RpdgInit(p, x0);
    for (int t = 1; t <= 200; ++t) {
      PdgStep(p, s.At(t), pdg);
      RpdgStep(p, s.At(t), 0, 1.0, rpdg);
      worst = std::max(worst, testing::SupNorm(pdg.x_prev, rpdg.x_prev));
    }
  }
  return {worst <= 1e-12,
          fmt::format("max sup-norm difference {:.3g} over 200 iterations", worst)};
}

// ---------------------------------------------------------------------------
// 5-7. Worst-case ensembles, shared between the three criteria.

constexpr int kWorstM = 4;
constexpr double kWorstQ = 100.0;
constexpr std::int64_t kWorstK = 300;

struct WorstCaseEnsemble {
  ScheduleKind kind;
  WorstCaseSpec spec;
  Schedule schedule;
  double lip_f = 0.0;
  double p0 = 0.0;
  EnsembleStats stats;
};

const std::vector<WorstCaseEnsemble>& WorstCaseEnsembles() {
  static const std::vector<WorstCaseEnsemble> ensembles = [] {
    std::vector<WorstCaseEnsemble> out;
    const WorstCaseSpec spec{.m = kWorstM,
                             .n_tilde = MinimumDimension(kWorstM, kWorstQ, kWorstK).n_tilde,
                             .mu = 1.0,
                             .Q = kWorstQ};
    const ProblemInstance p = BuildWorstCase(spec);
    const Vec x0 = Vec::Zero(p.n);
    for (ScheduleKind kind : {ScheduleKind::kRpdgNonuniform, ScheduleKind::kRpdgUniform}) {
      WorstCaseEnsemble e{kind, spec, {}, p.lip_f, PrimalProxDistance(x0, *p.opt_x), {}};
      e.schedule = kind == ScheduleKind::kRpdgNonuniform ? RpdgNonuniform(p.lip, p.mu)
                                                         : RpdgUniform(p.lip, p.mu);
      e.stats = RunRpdgEnsemble(p, e.schedule, x0,
                                {.k_max = kWorstK,
                                 .seeds = SeedRange(1, 200),
                                 .record_gap = true});
      out.push_back(std::move(e));
    }
    return out;
  }();
  return ensembles;
}

// Counts k with mean > curve + 3 SE.
Outcome UpperCheck(bool gap) {
  std::string detail;
  bool pass = true;
  for (const WorstCaseEnsemble& e : WorstCaseEnsembles()) {
    const SeriesStats& s = gap ? e.stats.gap : e.stats.dist;
    const CurveKind curve = gap ? GapCurveFor(e.schedule) : DistCurveFor(e.schedule);
    const CurveParams cp{e.spec.mu, e.lip_f, e.schedule.contraction,
                         e.schedule.eta, e.p0};
    int violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= kWorstK; ++k) {
      const double bound = TheoreticalUpperCurve(curve, cp, k);
      const double margin = bound + 3.0 * s.std_error[k - 1] - s.mean[k - 1];
      worst = std::min(worst, margin / bound);
      violations += margin < 0.0;
    }
    pass = pass && violations == 0;
    detail += fmt::format("{}{}: {} violations, min relative margin {:.3g}",
                          detail.empty() ? "" : "; ", ScheduleKindName(e.kind),
                          violations, worst);
  }
  return {pass, detail + " (200 seeds, k <= 300)"};
}

Outcome LowerBoundSandwich() {
  std::string detail;
  bool pass = true;
  for (const WorstCaseEnsemble& e : WorstCaseEnsembles()) {
    int violations = 0;
    double tightest = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= kWorstK; ++k) {
      const double mean = e.stats.dist.mean[k - 1] / e.p0;
      const double se = e.stats.dist.std_error[k - 1] / e.p0;
      const double lower = LowerBoundCurve(kWorstM, kWorstQ, k);
      tightest = std::min(tightest, mean / lower);
      violations += mean + 3.0 * se < lower;
    }
    pass = pass && violations == 0;
    detail += fmt::format("{}{}: {} violations, min mean/lower {:.3g}",
                          detail.empty() ? "" : "; ", ScheduleKindName(e.kind),
                          violations, tightest);
  }
  // The experiment refuses dimensions below the threshold.
  bool gated = false;
  try {
    RunBoundSandwich({.m = kWorstM, .n_tilde = 2, .mu = 1.0, .Q = kWorstQ},
                     ScheduleKind::kRpdgUniform, SeedRange(1, 2), kWorstK);
  } catch (const Error& e) {
    gated = e.code() == ErrorCode::kDimensionTooSmall;
  }
  pass = pass && gated;
  return {pass, detail + fmt::format("; n_tilde = {} admitted, n_tilde = 2 {}",
                                     WorstCaseEnsembles().front().spec.n_tilde,
                                     gated ? "rejected" : "NOT rejected")};
}

// ---------------------------------------------------------------------------
// 8. sqrt(m) separation.

Outcome SqrtMSeparation() {
  const RandomQuadraticOptions o{.m = 100, .n = 20, .mu = 1.0, .cond_target = 1e6,
                                 .seed = 7, .aligned = true, .equal_lip = true,
                                 .lip_scale = 100.0};
  const ProblemInstance p = MakeRandomQuadratic(o);
  const Vec x0 = Vec::Zero(p.n);
  const double p0 = PrimalProxDistance(x0, *p.opt_x);
  const double eps = 1e-6 * p0;
  const SolveResult pdg =
      RunPdg(p, PdgStronglyConvex(p.lip_f, p.mu), x0,
             {.k_max = 1000000, .dist_tol = eps, .record = {.objective = false}});
  if (*pdg.trace.rows.back().dist_p > eps) return {false, "PDG did not reach eps"};
  const double pdg_evals = static_cast<double>(p.m) * pdg.iterations;

  std::string detail = fmt::format("L/mu = {:.3g}; PDG m*k = {:.0f}", p.total_lip() / p.mu,
                                   pdg_evals);
  bool pass = true;
  for (const Schedule& s : {RpdgNonuniform(p.lip, p.mu), RpdgUniform(p.lip, p.mu)}) {
    const std::int64_t k_max = IterationBound(
        {.target = BoundTarget::kDist,
         .sampling = s.kind == ScheduleKind::kRpdgUniform ? Sampling::kUniform
                                                          : Sampling::kNonuniform,
         .m = p.m, .cond_const = s.cond_const, .lip_f = p.lip_f, .mu = p.mu,
         .p0 = p0, .eps = eps});
    const EnsembleStats stats =
        RunRpdgEnsemble(p, s, x0, {.k_max = k_max, .seeds = SeedRange(1, 50)});
    std::optional<std::int64_t> crossing;
    for (std::int64_t k = 1; k <= k_max && !crossing; ++k) {
      if (stats.dist.mean[k - 1] <= eps) crossing = k;
    }
    if (!crossing) return {false, detail + "; RPDG mean never reached eps"};
    const double evals = static_cast<double>(p.m + *crossing);
    pass = pass && evals <= 0.5 * pdg_evals;
    detail += fmt::format("; {} m+k = {:.0f} (ratio {:.3f})", ScheduleKindName(s.kind),
                          evals, evals / pdg_evals);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 9-11. Wrappers.

Outcome SmoothingAccuracy() {
  const int m = 5, n = 5;
  DatasetMatrix d;
  d.a.resize(m, n);
  d.b.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) d.a(i, j) = CounterGaussian(11, i * n + j);
    d.b[i] = CounterGaussian(12, i);
  }
  const NonsmoothProblem ns = MakeAbslossNonsmooth(d, 1.0);
  // Subgradient method with steps 2/(mu (t+1)) and t-weighted averaging:
  // Psi(avg) - Psi* <= 2 G^2 / (mu (T+1)), G the largest subgradient norm.
  const std::int64_t iterations = 20000000;
  Vec x = Vec::Zero(n), avg = Vec::Zero(n);
  double weight = 0.0, g_max = 0.0;
  for (std::int64_t t = 1; t <= iterations; ++t) {
    Vec sub = ns.mu * x;
    for (int i = 0; i < m; ++i) {
      const double r = d.a.row(i).dot(x) - d.b[i];
      if (r != 0.0) sub += (r > 0 ? 1.0 : -1.0) * d.a.row(i).transpose();
    }
    g_max = std::max(g_max, sub.norm());
    x -= 2.0 / (ns.mu * (t + 1.0)) * sub;
    weight += static_cast<double>(t);
    avg += (static_cast<double>(t) / weight) * (x - avg);
  }
  const double psi_star = NonsmoothObjective(ns, avg);
  const double oracle_error = 2.0 * g_max * g_max / (ns.mu * (iterations + 1.0));
  if (oracle_error > 1e-4) {
    return {false, fmt::format("oracle certificate {:.3g} > 1e-4", oracle_error)};
  }
  double worst = 0.0;
  std::int64_t budget = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const WrapperResult r = SmoothSolve(ns, 1e-2, Vec::Zero(n), {.seed = seed});
    worst = std::max(worst, NonsmoothObjective(ns, r.x_bar) - psi_star);
    budget = r.budget;
  }
  return {worst <= 1e-2,
          fmt::format("max gap {:.4g} over 5 seeds (budget {} iterations); oracle "
                      "error <= {:.2g}",
                      worst, budget, oracle_error)};
}

Outcome PerturbationAccuracy() {
  const int m = 4, n = 6, rows = 3;
  std::vector<Eigen::MatrixXd> ops;
  std::vector<Vec> targets;
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd a(rows, n);
    Vec b(rows);
    for (int r = 0; r < rows; ++r) {
      for (int j = 0; j < n; ++j) a(r, j) = CounterGaussian(21 + i, r * n + j);
      b[r] = 3.0 * CounterGaussian(31 + i, r);
    }
    ops.push_back(a);
    targets.push_back(b);
  }
  const ProblemInstance p = MakeLeastSquares(
      ops, targets, 0.0, FeasibleSet::Box(Vec::Constant(n, -1.0), Vec::Constant(n, 1.0)));
  Vec x = Vec::Zero(n);
  for (int it = 0; it < 200000; ++it) {
    x = p.feasible_set.Project(x - FullGradient(p, x) / p.lip_f);
  }
  // The linearization gap certifies the oracle's own suboptimality.
  const double certificate = *LinearizationGap(p, x);
  if (certificate > 1e-8) {
    return {false, fmt::format("oracle certificate {:.3g} > 1e-8", certificate)};
  }
  const double psi_star = ObjectiveValue(p, x);
  double sum = 0.0;
  std::int64_t budget = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WrapperResult r = PerturbSolve(p, 1e-2, Vec::Zero(n), {.seed = seed});
    sum += ObjectiveValue(p, r.x_bar) - psi_star;
    budget = r.budget;
  }
  const double mean = sum / 20.0;
  return {mean <= 1e-2,
          fmt::format("20-seed mean gap {:.4g} (budget {} iterations); oracle error "
                      "<= {:.2g}",
                      mean, budget, certificate)};
}

Outcome UnconstrainedAccuracy() {
  const int m = 8, n = 5;
  Vec x_true(n);
  for (int j = 0; j < n; ++j) x_true[j] = CounterGaussian(99, j);
  std::vector<Eigen::MatrixXd> ops;
  std::vector<Vec> targets;
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd a(2, n);
    for (int r = 0; r < 2; ++r) {
      for (int j = 0; j < n; ++j) a(r, j) = CounterGaussian(40 + i, r * n + j);
    }
    targets.push_back(a * x_true);
    ops.push_back(std::move(a));
  }
  const ProblemInstance p = MakeLeastSquares(ops, targets, 0.0);
  // Consistent and full rank: X* = {x_true}, f* = 0.
  const double residual = (*p.opt_x - x_true).norm();
  double sum = 0.0;
  std::int64_t budget = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WrapperResult r = UnconstrainedSolve(p, 1e-2, Vec::Zero(n), {.seed = seed});
    sum += *r.relative_accuracy;
    budget = r.budget;
  }
  const double mean = sum / 20.0;
  return {mean <= 1e-2 && residual <= 1e-9,
          fmt::format("20-seed mean R_ac {:.4g} (budget {} iterations); |x_opt - "
                      "x_true| = {:.2g}",
                      mean, budget, residual)};
}

// ---------------------------------------------------------------------------
// 12. Schedule validators.

Outcome ValidatorSweep() {
  Gen gen(12);
  double worst = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = gen.Int(1, 128);
    std::vector<double> lip(m);
    for (double& l : lip) l = gen.LogUniform(1e-3, 1e4);
    const double mu = gen.LogUniform(1e-6, 10.0);
    for (const Schedule& s : {RpdgNonuniform(lip, mu), RpdgUniform(lip, mu)}) {
      for (const ConditionCheck& c : ValidateRpdgConditions(s, lip, mu).checks) {
        worst = std::min(worst, c.relative_slack);
        failures += c.relative_slack < -1e-10;
      }
    }
  }
  int pdg_failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double lip_f = gen.LogUniform(1e-2, 1e4);
    const double mu = gen.LogUniform(1e-4, 1.0) * lip_f;
    pdg_failures += !ValidatePdgConditions(PdgStronglyConvex(lip_f, mu), lip_f, mu, 50).ok();
    pdg_failures += !ValidatePdgConditions(PdgNonStrongly(lip_f), lip_f, 0.0, 200).ok();
  }
  return {failures == 0 && pdg_failures == 0,
          fmt::format("rpdg: 2000 schedules, min relative slack {:.3g}; pdg: {} of 400 "
                      "schedules fail d1-d5",
                      worst, pdg_failures)};
}

// ---------------------------------------------------------------------------
// 13. Oracle suite.

Outcome OracleSuite() {
  Gen gen(13);
  double prox_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    CompositeTerm h = CompositeTerm::L1(gen.Uniform(0.0, 2.0)).PlusLinear(gen.Vector(2));
    const ProblemInstance p = testing::ProxShell(
        2, gen.Uniform(0.0, 2.0),
        FeasibleSet::Box(Vec::Constant(2, -1.0), Vec::Constant(2, 1.5)), h);
    const Vec g = gen.Vector(2, 3.0);
    const Vec x0 = gen.UniformVector(2, -1.0, 1.5);
    const double eta = gen.LogUniform(0.1, 10.0);
    prox_err = std::max(prox_err, testing::SupNorm(PrimalProxMap(p, g, x0, eta),
                                                   testing::LatticeArgmin(p, g, x0, eta)));
  }

  double dual_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd q = gen.Spd(3, 0.2, 5.0);
    const Vec b = gen.Vector(3);
    const ProblemInstance p = testing::QuadraticInstance({q}, {b}, 0.0);
    DualBlockState block{gen.Vector(3), {}};
    p.gradient(0, block.x_under, block.y);
    const Vec x_tilde = gen.Vector(3);
    const double tau = gen.LogUniform(1e-3, 1e3);
    // Conjugate of 0.5 x'Qx - b'x is 0.5 (y+b)'Q^-1(y+b); its Bregman prox
    // step solves (1+tau) Q^-1 y = x~ + tau Q^-1 (y0 + b) - (1+tau) Q^-1 b.
    const Eigen::MatrixXd q_inv = q.inverse();
    const Vec y = ((1.0 + tau) * q_inv)
                      .ldlt()
                      .solve(x_tilde + tau * q_inv * (block.y + b) - (1.0 + tau) * q_inv * b);
    const DualBlockState next = DualAscentStep(p, 0, x_tilde, block, tau);
    dual_err = std::max(dual_err, (next.y - y).norm() / (1.0 + y.norm()));
  }

  double fd_err = 0.0;
  auto check_fd = [&](const ProblemInstance& p, double radius) {
    for (int i = 0; i < p.m; ++i) {
      fd_err = std::max(
          fd_err, CheckGradientFiniteDifference(p, i, Vec::Zero(p.n), radius, 10, 5).worst);
    }
  };
  check_fd(MakeRandomQuadratic(4, 8, 0.1, 100.0, 1), 2.0);
  DatasetMatrix d;
  d.a = gen.Matrix(12, 4);
  d.b = Vec::NullaryExpr(12, [&](Eigen::Index) { return gen.Uniform(0, 1) < 0.5 ? -1.0 : 1.0; });
  check_fd(MakeLogistic(d, 0.0), 2.0);
  check_fd(MakeLogistic(d, 0.0, 3), 2.0);
  d.b = gen.Vector(12);
  check_fd(SmoothedInstance(MakeAbslossNonsmooth(d, 0.0), 0.5), 2.0);
  check_fd(BuildWorstCase({.m = 2, .n_tilde = 10, .mu = 1.0, .Q = 50.0}), 1.0);

  double residual = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const WorstCaseSpec spec{.m = gen.Int(1, 4), .n_tilde = gen.Int(1, 300),
                             .mu = gen.LogUniform(0.1, 10.0),
                             .Q = 1.0 + gen.LogUniform(0.01, 1e5)};
    const ProblemInstance p = BuildWorstCase(spec);
    const Vec r = FullGradient(p, *p.opt_x) + spec.mu * *p.opt_x;
    residual = std::max(residual, r.norm() / (spec.scale() * p.opt_x->norm()));
  }

  return {prox_err <= 1e-3 && dual_err <= 1e-8 && fd_err <= 1e-5 && residual <= 1e-10,
          fmt::format("prox vs lattice {:.2g}; dual step vs conjugate {:.2g}; finite "
                      "differences {:.2g}; worst-case residual {:.2g}",
                      prox_err, dual_err, fd_err, residual)};
}

// ---------------------------------------------------------------------------
// 14. Determinism of the CLI artifacts.

Outcome Determinism() {
  const std::string config = std::string(RPDG_SOURCE_DIR) + "/tools/configs/uniform.ini";
  const auto base = std::filesystem::temp_directory_path() / "rpdg_acceptance";
  std::filesystem::remove_all(base);
  std::vector<std::string> files;
  for (const char* run : {"a", "b"}) {
    const std::string dir = (base / run).string();
    const char* argv[] = {"rpdg_bench", "solve", "--config", config.c_str(),
                          "--seed", "3", "--out", dir.c_str()};
    std::ostringstream out, err;
    if (RunCli(8, argv, out, err) != 0) return {false, "solve failed: " + err.str()};
    files.push_back(ReadFile(dir + "/uniform_seed3.csv"));
  }
  std::filesystem::remove_all(base);
  return {files[0] == files[1] && !files[0].empty(),
          fmt::format("two solve runs wrote {} and {} bytes, {}", files[0].size(),
                      files[1].size(),
                      files[0] == files[1] ? "identical" : "DIFFERENT")};
}

}  // namespace
}  // namespace rpdg

int main() {
  using namespace rpdg;
  // Failures whose cause is understood and recorded; they do not fail the
  // gate as long as the run attributes them to that cause.
  const std::map<int, std::string_view> known = {
      {1, "float64 resolution floor"},
  };
  const std::vector<Criterion> criteria = {
      {1, "PDG distance bound, worst case m=1 Q=9", 1.0, PdgDistanceBound},
      {2, "PDG ergodic gap bound, mu=0", 1.0, PdgGapBound},
      {3, "AG equivalence", 1.0, AgEquivalence},
      {4, "RPDG m=1 reduction", 1.0, SingleComponentReduction},
      {5, "RPDG expected distance bound", 30.0, [] { return UpperCheck(false); }},
      {6, "RPDG ergodic gap bound", 30.0, [] { return UpperCheck(true); }},
      {7, "lower-bound sandwich", 30.0, LowerBoundSandwich},
      {8, "sqrt(m) separation", 60.0, SqrtMSeparation},
      {9, "smoothing accuracy", 10.0, SmoothingAccuracy},
      {10, "perturbation accuracy", 10.0, PerturbationAccuracy},
      {11, "unconstrained relative accuracy", 10.0, UnconstrainedAccuracy},
      {12, "schedule validators", 10.0, ValidatorSweep},
      {13, "oracle suite", 10.0, OracleSuite},
      {14, "determinism", 10.0, Determinism},
  };
  int unexpected = 0;
  int passed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.time_limit_s) {
      outcome.pass = false;
      outcome.explained = false;
      outcome.detail += fmt::format("; runtime {:.2f} s exceeds {:.0f} s", seconds,
                                    c.time_limit_s);
    }
    std::string note;
    if (!outcome.pass) {
      const auto it = known.find(c.id);
      if (it != known.end() && outcome.explained) {
        note = fmt::format(" [known: {}]", it->second);
      } else {
        ++unexpected;
      }
    } else {
      ++passed;
    }
    std::printf("AC%02d %s  %s: %s (%.2f s)%s\n", c.id, outcome.pass ? "PASS" : "FAIL",
                std::string(c.name).c_str(), outcome.detail.c_str(), seconds,
                note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass; %d unexpected failure(s)\n", passed,
              criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
