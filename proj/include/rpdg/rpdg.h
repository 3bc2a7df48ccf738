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

#ifndef RPDG_RPDG_H_
#define RPDG_RPDG_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "rpdg/problem.h"
#include "rpdg/schedule.h"
#include "rpdg/solver_common.h"

namespace rpdg {

inline constexpr std::int64_t kGsumCheckPeriod = 4096;

struct RpdgState {
  Eigen::VectorXd x_prev;      // x^{t-1}
  Eigen::VectorXd x_prevprev;  // x^{t-2}
  std::vector<DualBlockState> blocks;
  Eigen::VectorXd g_sum;  // sum_i blocks[i].y, maintained incrementally
  std::int64_t t = 0;
  std::int64_t grad_evals = 0;
  ErgodicMean ergodic;
  // Gradient evaluations of each component, the initial one included.
  std::vector<std::int64_t> touches;
  double max_gsum_drift = 0.0;
  int last_index = -1;
};

// y_i^0 = grad f_i(x0), x-under_i^0 = x0, g^0 = sum_i y_i^0.
RpdgState RpdgInit(const ProblemInstance& problem, const Eigen::VectorXd& x0);

// One iteration with a given component index i and its probability p_i.
// Exactly one component gradient is evaluated.
void RpdgStep(const ProblemInstance& problem, const StepParams& params, int i,
              double p_i, RpdgState& state);

// Replaces g_sum by a full resummation and returns the relative drift
// ||resummed - running|| / (1 + ||resummed||).
double ResumGradient(RpdgState& state);

struct RpdgOptions {
  std::int64_t k_max = 0;
  std::uint64_t seed = 0;
  std::optional<double> dist_tol;
  RecordOptions record;
};

// Called after every iteration; return false to stop early.
using RpdgObserver = std::function<bool(const RpdgState&)>;

// Runs the sampled iteration. rpdg_* schedules must pass the condition
// validator (kInvalidSchedule naming the violated conditions otherwise);
// custom schedules run unvalidated.
RpdgState RunRpdgObserved(const ProblemInstance& problem,
                          const Schedule& schedule, const Eigen::VectorXd& x0,
                          std::int64_t k_max, std::uint64_t seed,
                          const RpdgObserver& observer);

// Same iteration with trace recording. The bound column is the distance
// curve of the schedule kind scaled by P(x0, x*); blank for custom
// schedules or unknown opt_x.
SolveResult RunRpdg(const ProblemInstance& problem, const Schedule& schedule,
                    const Eigen::VectorXd& x0, const RpdgOptions& options);

}  // namespace rpdg

#endif  // RPDG_RPDG_H_
