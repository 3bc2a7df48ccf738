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

#include "rpdg/wrappers.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "rpdg/error.h"
#include "rpdg/rpdg.h"

namespace rpdg {

namespace {

double TargetEps(double eps, const WrapperOptions& options) {
  if (options.mode == GuaranteeMode::kExpectation) return eps;
  Require(options.lambda > 0.0 && options.lambda < 1.0,
          ErrorCode::kInvalidArgument, "lambda must lie in (0, 1)");
  return options.lambda * eps;
}

std::int64_t Capped(std::int64_t budget, const WrapperOptions& options) {
  return options.max_iterations > 0 ? std::min(budget, options.max_iterations)
                                    : budget;
}

// RPDG with the nonuniform policy for K-tilde(eps) iterations.
WrapperResult RunGapBudget(const ProblemInstance& problem, double eps,
                           double p0, const Eigen::VectorXd& x0,
                           const WrapperOptions& options) {
  WrapperResult result;
  result.schedule = RpdgNonuniform(problem.lip, problem.mu);
  if (p0 <= 0.0) {
    // x0 is already optimal.
    result.x_bar = x0;
    return result;
  }
  IterationBoundInput in;
  in.target = BoundTarget::kGap;
  in.sampling = Sampling::kNonuniform;
  in.m = problem.m;
  in.cond_const = result.schedule.cond_const;
  in.lip_f = problem.lip_f;
  in.mu = problem.mu;
  in.p0 = p0;
  in.eps = TargetEps(eps, options);
  result.budget = IterationBound(in);
  result.iterations = Capped(result.budget, options);
  if (result.iterations == 0) {
    result.x_bar = x0;
    return result;
  }
  RpdgOptions run;
  run.k_max = result.iterations;
  run.seed = options.seed;
  run.record = options.record;
  SolveResult solved = RunRpdg(problem, result.schedule, x0, run);
  result.x_bar = std::move(solved.x_bar);
  result.trace = std::move(solved.trace);
  return result;
}

}  // namespace

PerturbationSpec MakePerturbationSpec(const ProblemInstance& problem, double eps,
                                      const Eigen::VectorXd& x0) {
  Require(eps > 0.0, ErrorCode::kInvalidArgument, "eps must be > 0");
  Require(problem.feasible_set.bounded(), ErrorCode::kInvalidArgument,
          "perturbation needs a bounded X; use UnconstrainedSolve for X = R^n");
  PerturbationSpec spec;
  spec.eps = eps;
  spec.omega_x_sq = problem.feasible_set.MaxProxDistance(x0);
  Require(spec.omega_x_sq > 0.0, ErrorCode::kInvalidArgument,
          "X is a single point");
  spec.x_anchor = x0;
  spec.delta = eps / (2.0 * spec.omega_x_sq);
  return spec;
}

ProblemInstance PerturbedInstance(const ProblemInstance& problem,
                                  const PerturbationSpec& spec) {
  ProblemInstance p = problem;
  p.mu = problem.mu + spec.delta;
  p.h = problem.h.PlusLinear(-spec.delta * spec.x_anchor);
  p.opt_x.reset();
  p.quadratic.reset();
  p.family = problem.family + "+perturbed";
  return p;
}

double PerturbedObjective(const ProblemInstance& perturbed,
                          const PerturbationSpec& spec, const Eigen::VectorXd& x) {
  return ObjectiveValue(perturbed, x) +
         0.5 * spec.delta * spec.x_anchor.squaredNorm();
}

WrapperResult PerturbSolve(const ProblemInstance& problem, double eps,
                           const Eigen::VectorXd& x0,
                           const WrapperOptions& options) {
  Require(problem.mu == 0.0, ErrorCode::kInvalidArgument,
          "PerturbSolve expects mu = 0; call RPDG directly when mu > 0");
  const PerturbationSpec spec = MakePerturbationSpec(problem, eps, x0);
  const ProblemInstance perturbed = PerturbedInstance(problem, spec);
  // The bound in K-tilde grows with delta, so a huge eps never drives it to
  // zero; certify x0 directly instead.
  if (const auto gap = LinearizationGap(problem, x0); gap && *gap <= eps) {
    WrapperResult result;
    result.schedule = RpdgNonuniform(perturbed.lip, perturbed.mu);
    result.x_bar = x0;
    result.delta = spec.delta;
    return result;
  }
  WrapperResult result =
      RunGapBudget(perturbed, eps / 2.0, spec.omega_x_sq, x0, options);
  result.delta = spec.delta;
  return result;
}

WrapperResult SmoothSolve(const NonsmoothProblem& problem, double eps,
                          const Eigen::VectorXd& x0,
                          const WrapperOptions& options) {
  Require(eps > 0.0, ErrorCode::kInvalidArgument, "eps must be > 0");
  Require(problem.spec.omega_y_sq > 0.0, ErrorCode::kInvalidArgument,
          "dual sets have zero size");
  const double delta = eps / (2.0 * problem.spec.omega_y_sq);
  const ProblemInstance smoothed = SmoothedInstance(problem, delta);
  WrapperResult result;
  if (problem.mu > 0.0) {
    result = RunGapBudget(smoothed, eps / 2.0,
                          InitialDistanceBound(smoothed, x0), x0, options);
  } else {
    Require(problem.feasible_set.bounded(), ErrorCode::kInvalidArgument,
            "smoothing with mu = 0 needs a bounded X");
    result = PerturbSolve(smoothed, eps / 2.0, x0, options);
  }
  result.delta = delta;
  return result;
}

std::int64_t UnconstrainedBudget(int m, double eps_rel, double alpha) {
  const double md = m;
  const double c = 2.0 / eps_rel + 1.0;
  const double b = 4.0 * (md + 2.0 * std::sqrt(2.0 * md * c)) *
                   (3.0 * eps_rel + 4.0 + (2.0 + eps_rel) * c);
  const double arg = 2.0 * b / eps_rel;
  if (!(arg > 1.0)) return 0;
  return static_cast<std::int64_t>(
      std::ceil(2.0 * std::log(arg) / -std::log(alpha)));
}

double RelativeAccuracy(double f_x, double f_star, double total_lip,
                        double dist_sq) {
  return 2.0 * (f_x - f_star) / (total_lip * (1.0 + dist_sq));
}

WrapperResult UnconstrainedSolve(const ProblemInstance& problem, double eps_rel,
                                 const Eigen::VectorXd& x0,
                                 const WrapperOptions& options) {
  Require(eps_rel > 0.0, ErrorCode::kInvalidArgument, "eps_rel must be > 0");
  Require(problem.h.is_zero() && problem.mu == 0.0 &&
              !problem.feasible_set.bounded(),
          ErrorCode::kInvalidArgument,
          "UnconstrainedSolve needs X = R^n, h = 0 and mu = 0");
  const double eps = TargetEps(eps_rel, options);
  const double total = problem.total_lip();
  const double delta = total * eps / 2.0;

  ProblemInstance perturbed = problem;
  perturbed.mu = delta;
  perturbed.h = CompositeTerm::Linear(-delta * x0);
  perturbed.opt_x.reset();
  perturbed.quadratic.reset();

  WrapperResult result;
  result.delta = delta;
  result.schedule =
      RpdgFromC(ScheduleKind::kRpdgNonuniform,
                NonuniformProbabilities(problem.lip),
                8.0 * (total + delta) / delta, delta);
  const ConditionReport report =
      ValidateRpdgConditions(result.schedule, problem.lip, delta);
  Require(report.ok(), ErrorCode::kInvalidSchedule,
          fmt::format("schedule violates {}", report.Violations()));
  result.schedule.validated = true;
  result.budget = UnconstrainedBudget(problem.m, eps, result.schedule.contraction);
  result.iterations = Capped(result.budget, options);
  if (result.iterations == 0) {
    result.x_bar = x0;
  } else {
    RpdgOptions run;
    run.k_max = result.iterations;
    run.seed = options.seed;
    run.record = options.record;
    SolveResult solved = RunRpdg(perturbed, result.schedule, x0, run);
    result.x_bar = std::move(solved.x_bar);
    result.trace = std::move(solved.trace);
  }
  if (problem.opt_x && problem.has_objective()) {
    result.relative_accuracy = RelativeAccuracy(
        SmoothValue(problem, result.x_bar), SmoothValue(problem, *problem.opt_x),
        total, (x0 - *problem.opt_x).squaredNorm());
  }
  return result;
}

}  // namespace rpdg
