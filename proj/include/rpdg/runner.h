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


#ifndef RPDG_RUNNER_H_
#define RPDG_RUNNER_H_

#include <cstdint>
#include <optional>

#include "Eigen/Core"
#include "rpdg/config.h"
#include "rpdg/ensemble.h"
#include "rpdg/problem.h"
#include "rpdg/schedule.h"
#include "rpdg/smoothing.h"
#include "rpdg/trace.h"

namespace rpdg {

// The instance a config describes. For the absloss family `problem` is the
// smoothed surrogate at the delta the smoothing wrapper will pick.
struct BuiltInstance {
  ProblemInstance problem;
  std::optional<NonsmoothProblem> nonsmooth;
  Eigen::VectorXd x0;
};

BuiltInstance BuildInstance(const RunConfig& config);

// The schedule a pdg or rpdg run uses: the configured kind, or the strongly
// convex / nonuniform default.
Schedule ScheduleFor(const RunConfig& config, const ProblemInstance& problem);

struct RunOutcome {
  Trace trace;
  Eigen::VectorXd x_bar;
  std::int64_t iterations = 0;
  std::int64_t grad_evals = 0;
  std::optional<std::int64_t> budget;  // wrappers only
};

// One seed. Wrapper budgets are capped at solver.k_max.
RunOutcome RunSolve(const RunConfig& config, const BuiltInstance& built,
                    std::uint64_t seed);

// rpdg method only.
EnsembleStats RunEnsemble(const RunConfig& config, const BuiltInstance& built);

// The condition validator matching the run: (cond_s*) for RPDG and every
// wrapper (on the instance the wrapper actually solves), (cond_d*) over
// t = 2..k_max for PDG.
ConditionReport ValidateRun(const RunConfig& config, const BuiltInstance& built);

}  // namespace rpdg

#endif  // RPDG_RUNNER_H_
