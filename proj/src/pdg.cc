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

#include "rpdg/pdg.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

namespace {

std::int64_t ElapsedNs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

PdgState PdgInit(const ProblemInstance& problem, const Eigen::VectorXd& x0) {
  PdgState state;
  state.x_prev = x0;
  state.x_prevprev = x0;
  state.x_under = x0;
  state.g = FullGradient(problem, x0);
  state.grad_evals = problem.m;
  return state;
}

void PdgStep(const ProblemInstance& problem, const StepParams& params,
             PdgState& state) {
  ++state.t;
  const Eigen::VectorXd x_tilde =
      state.x_prev + params.alpha * (state.x_prev - state.x_prevprev);
  DualAverageInto(x_tilde, params.tau, state.x_under);
  state.g = FullGradient(problem, state.x_under);
  state.grad_evals += problem.m;
  Eigen::VectorXd x;
  PrimalProxMapInto(problem, state.g, state.x_prev, params.eta, x);
  state.x_prevprev.swap(state.x_prev);
  state.x_prev = std::move(x);
  state.ergodic.Add(state.x_prev, params.theta_ratio);
  state.ergodic_under.Add(state.x_under, params.theta_ratio);
}

std::optional<double> PrimalDualGap(const ProblemInstance& problem,
                                    const Eigen::VectorXd& x_bar,
                                    const Eigen::VectorXd& u_bar) {
  if (!problem.quadratic || !problem.has_objective()) return std::nullopt;
  // For quadratic f the averaged gradients equal grad f(u_bar), so the
  // conjugate is J(g_bar) = <g_bar, u_bar> - f(u_bar) without inverting H.
  const Eigen::VectorXd g_bar = FullGradient(problem, u_bar);
  const std::optional<double> inner = MinimizeLinearModel(problem, g_bar);
  if (!inner) return std::nullopt;
  const double conj = g_bar.dot(u_bar) - SmoothValue(problem, u_bar);
  return ObjectiveValue(problem, x_bar) - *inner + conj;
}

SolveResult RunPdg(const ProblemInstance& problem, const Schedule& schedule,
                   const Eigen::VectorXd& x0, const PdgOptions& options) {
  problem.Validate();
  Require(schedule.is_pdg(), ErrorCode::kInvalidSchedule,
          fmt::format("RunPdg needs a pdg schedule, got {}",
                      ScheduleKindName(schedule.kind)));
  if (schedule.kind == ScheduleKind::kPdgStronglyConvex) {
    Require(problem.mu > 0.0, ErrorCode::kInvalidSchedule,
            "pdg_strongly_convex schedule on a problem with mu = 0");
  }
  Require(x0.size() == problem.n, ErrorCode::kInvalidArgument,
          "x0 has wrong dimension");
  Require(problem.feasible_set.Contains(x0, 1e-9), ErrorCode::kInvalidArgument,
          "x0 must lie in X");
  Require(options.k_max >= 0, ErrorCode::kInvalidArgument, "k_max must be >= 0");
  Require(!options.dist_tol || problem.opt_x.has_value(),
          ErrorCode::kInvalidArgument, "dist_tol needs a known opt_x");

  const auto start = std::chrono::steady_clock::now();
  PdgState state = PdgInit(problem, x0);
  SolveResult result;
  result.trace.rows.reserve(
      static_cast<std::size_t>(std::min<std::int64_t>(options.k_max, 1 << 20)));

  std::optional<double> p0;
  if (problem.opt_x) p0 = PrimalProxDistance(x0, *problem.opt_x);
  const bool strongly = schedule.kind == ScheduleKind::kPdgStronglyConvex;
  const CurveKind curve = strongly ? CurveKind::kPdgDist : CurveKind::kPdgGap;
  CurveParams cp{problem.mu, schedule.lip_f, schedule.contraction, 0.0,
                 p0.value_or(0.0)};
  const bool want_obj = options.record.objective && problem.has_objective();

  for (std::int64_t t = 1; t <= options.k_max; ++t) {
    PdgStep(problem, schedule.At(t), state);
    TraceRow row;
    row.t = t;
    row.grad_evals = state.grad_evals;
    if (options.record.wall_time) row.wall_ns = ElapsedNs(start);
    if (problem.opt_x) row.dist_p = PrimalProxDistance(state.x_prev, *problem.opt_x);
    if (want_obj) {
      row.obj = ObjectiveValue(problem, state.x_prev);
      row.obj_ergodic = ObjectiveValue(problem, state.ergodic.mean());
    }
    if (options.record.bound && p0) {
      row.bound_upper = TheoreticalUpperCurve(curve, cp, t);
    }
    result.trace.rows.push_back(row);
    if (options.dist_tol && *row.dist_p <= *options.dist_tol) break;
  }

  result.iterations = state.t;
  result.grad_evals = state.grad_evals;
  result.x = state.x_prev;
  result.x_bar = state.t > 0 ? state.ergodic.mean() : x0;
  if (state.t > 0 && problem.feasible_set.bounded()) {
    result.gap_certificate =
        PrimalDualGap(problem, state.ergodic.mean(), state.ergodic_under.mean());
    if (result.gap_certificate) {
      CurveParams gp = cp;
      gp.p0 = problem.feasible_set.MaxProxDistance(x0);
      result.gap_certificate_bound = TheoreticalUpperCurve(
          strongly ? CurveKind::kPdgGapStronglyConvex : CurveKind::kPdgGap, gp,
          state.t);
    }
  }
  return result;
}

std::vector<Eigen::VectorXd> RunNesterovAg(
    const ProblemInstance& problem,
    const std::function<double(std::int64_t)>& lambda,
    const std::function<double(std::int64_t)>& eta, const Eigen::VectorXd& x0,
    std::int64_t k) {
  Require(k >= 0, ErrorCode::kInvalidArgument, "k must be >= 0");
  std::vector<Eigen::VectorXd> iterates;
  iterates.reserve(static_cast<std::size_t>(k));
  Eigen::VectorXd x = x0;
  Eigen::VectorXd x_bar = x0;
  for (std::int64_t t = 1; t <= k; ++t) {
    const double l = lambda(t);
    Require(l >= 0.0 && l <= 1.0, ErrorCode::kInvalidArgument,
            fmt::format("lambda_{} = {} outside [0, 1]", t, l));
    const Eigen::VectorXd x_under = (1.0 - l) * x_bar + l * x;
    x = PrimalProxMap(problem, FullGradient(problem, x_under), x, eta(t));
    x_bar = (1.0 - l) * x_bar + l * x;
    iterates.push_back(x);
  }
  return iterates;
}

}  // namespace rpdg
