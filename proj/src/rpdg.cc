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

#include "rpdg/rpdg.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fmt/format.h"
#include "rpdg/error.h"
#include "rpdg/sampler.h"

namespace rpdg {

RpdgState RpdgInit(const ProblemInstance& problem, const Eigen::VectorXd& x0) {
  RpdgState state;
  state.x_prev = x0;
  state.x_prevprev = x0;
  state.blocks.resize(problem.m);
  state.g_sum = Eigen::VectorXd::Zero(problem.n);
  for (int i = 0; i < problem.m; ++i) {
    DualBlockState& b = state.blocks[i];
    b.x_under = x0;
    b.y.resize(problem.n);
    problem.gradient(i, x0, b.y);
    state.g_sum += b.y;
  }
  state.grad_evals = problem.m;
  state.touches.assign(problem.m, 1);
  return state;
}

void RpdgStep(const ProblemInstance& problem, const StepParams& params, int i,
              double p_i, RpdgState& state) {
  ++state.t;
  const Eigen::VectorXd x_tilde =
      state.x_prev + params.alpha * (state.x_prev - state.x_prevprev);
  DualBlockState& block = state.blocks[i];
  const Eigen::VectorXd y_old = block.y;
  DualAscentStepInPlace(problem, i, x_tilde, params.tau, block);
  ++state.grad_evals;
  ++state.touches[i];
  const Eigen::VectorXd delta = block.y - y_old;

  Eigen::VectorXd x;
  PrimalProxMapInto(problem, state.g_sum + delta / p_i, state.x_prev,
                    params.eta, x);
  state.g_sum += delta;
  state.x_prevprev.swap(state.x_prev);
  state.x_prev = std::move(x);
  state.ergodic.Add(state.x_prev, params.theta_ratio);
  state.last_index = i;

  if (state.t % kGsumCheckPeriod == 0) {
    state.max_gsum_drift = std::max(state.max_gsum_drift, ResumGradient(state));
  }
}

double ResumGradient(RpdgState& state) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(state.g_sum.size());
  for (const DualBlockState& b : state.blocks) sum += b.y;
  const double drift = (sum - state.g_sum).norm() / (1.0 + sum.norm());
  state.g_sum = std::move(sum);
  return drift;
}

RpdgState RunRpdgObserved(const ProblemInstance& problem,
                          const Schedule& schedule, const Eigen::VectorXd& x0,
                          std::int64_t k_max, std::uint64_t seed,
                          const RpdgObserver& observer) {
  problem.Validate();
  Require(!schedule.is_pdg(), ErrorCode::kInvalidSchedule,
          "RunRpdg needs an rpdg or custom schedule");
  Require(static_cast<int>(schedule.probs.size()) == problem.m,
          ErrorCode::kInvalidSchedule,
          fmt::format("schedule has {} probabilities for m = {}",
                      schedule.probs.size(), problem.m));
  if (schedule.is_rpdg()) {
    Require(problem.mu > 0.0, ErrorCode::kInvalidSchedule,
            "rpdg schedules need mu > 0");
    const ConditionReport report =
        ValidateRpdgConditions(schedule, problem.lip, problem.mu);
    Require(report.ok(), ErrorCode::kInvalidSchedule,
            fmt::format("schedule violates {}", report.Violations()));
  }
  Require(x0.size() == problem.n, ErrorCode::kInvalidArgument,
          "x0 has wrong dimension");
  Require(problem.feasible_set.Contains(x0, 1e-9), ErrorCode::kInvalidArgument,
          "x0 must lie in X");
  Require(k_max >= 0, ErrorCode::kInvalidArgument, "k_max must be >= 0");

  const Sampler sampler(schedule.probs, seed);
  RpdgState state = RpdgInit(problem, x0);
  for (std::int64_t t = 1; t <= k_max; ++t) {
    const int i = sampler.SampleIndex(t);
    RpdgStep(problem, schedule.At(t), i, schedule.probs[i], state);
    if (observer && !observer(state)) break;
  }
  return state;
}

SolveResult RunRpdg(const ProblemInstance& problem, const Schedule& schedule,
                    const Eigen::VectorXd& x0, const RpdgOptions& options) {
  Require(!options.dist_tol || problem.opt_x.has_value(),
          ErrorCode::kInvalidArgument, "dist_tol needs a known opt_x");
  SolveResult result;
  std::optional<double> p0;
  if (problem.opt_x) p0 = PrimalProxDistance(x0, *problem.opt_x);
  std::optional<CurveKind> curve;
  if (schedule.is_rpdg() && p0) curve = DistCurveFor(schedule);
  const CurveParams cp{problem.mu, problem.lip_f, schedule.contraction,
                       schedule.eta, p0.value_or(0.0)};
  const bool want_obj = options.record.objective && problem.has_objective();
  const auto start = std::chrono::steady_clock::now();
  result.trace.rows.reserve(
      static_cast<std::size_t>(std::min<std::int64_t>(options.k_max, 1 << 20)));

  auto record = [&](const RpdgState& s) {
    TraceRow row;
    row.t = s.t;
    row.grad_evals = s.grad_evals;
    if (options.record.wall_time) {
      row.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
    if (problem.opt_x) row.dist_p = PrimalProxDistance(s.x_prev, *problem.opt_x);
    if (want_obj) {
      row.obj = ObjectiveValue(problem, s.x_prev);
      row.obj_ergodic = ObjectiveValue(problem, s.ergodic.mean());
    }
    if (options.record.bound && curve) {
      row.bound_upper = TheoreticalUpperCurve(*curve, cp, s.t);
    }
    result.trace.rows.push_back(row);
    return !(options.dist_tol && *row.dist_p <= *options.dist_tol);
  };

  const RpdgState state = RunRpdgObserved(problem, schedule, x0, options.k_max,
                                          options.seed, record);
  result.iterations = state.t;
  result.grad_evals = state.grad_evals;
  result.x = state.x_prev;
  result.x_bar = state.t > 0 ? state.ergodic.mean() : x0;
  result.max_gsum_drift = state.max_gsum_drift;
  return result;
}

}  // namespace rpdg
