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

#ifndef RPDG_PDG_H_
#define RPDG_PDG_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "rpdg/problem.h"
#include "rpdg/schedule.h"
#include "rpdg/solver_common.h"

namespace rpdg {

struct PdgState {
  Eigen::VectorXd x_prev;      // x^{t-1}
  Eigen::VectorXd x_prevprev;  // x^{t-2}
  Eigen::VectorXd x_under;     // x-under^t
  Eigen::VectorXd g;           // grad f(x_under)
  std::int64_t t = 0;
  std::int64_t grad_evals = 0;
  ErgodicMean ergodic;        // x-bar
  ErgodicMean ergodic_under;  // same weights over x_under; pairs with g-bar
};

// x^{-1} = x^0, x-under^0 = x^0, g^0 = grad f(x^0).
PdgState PdgInit(const ProblemInstance& problem, const Eigen::VectorXd& x0);

// One iteration of the gradient form of the method: extrapolate, average the
// dual point, evaluate the full gradient, take the primal prox step.
void PdgStep(const ProblemInstance& problem, const StepParams& params,
             PdgState& state);

struct PdgOptions {
  std::int64_t k_max = 0;
  // Stop once P(x^t, x*) <= dist_tol (needs opt_x).
  std::optional<double> dist_tol;
  RecordOptions record;
};

// The trace bound column is P(x^t,x*)'s curve for the strongly convex policy
// and the ergodic gap curve for the variable policy, both scaled by
// P(x0, x*) and left blank when opt_x is unknown.
//
// gap_certificate is filled for quadratic instances (problem.quadratic set)
// on bounded X without an l1 term on a ball.
SolveResult RunPdg(const ProblemInstance& problem, const Schedule& schedule,
                   const Eigen::VectorXd& x0, const PdgOptions& options);

// Primal-dual gap of the pair (x_bar, grad f(u_bar)) over X x G for a
// quadratic f; nullopt when not computable in closed form.
std::optional<double> PrimalDualGap(const ProblemInstance& problem,
                                    const Eigen::VectorXd& x_bar,
                                    const Eigen::VectorXd& u_bar);

// Reference accelerated gradient variant:
//   x_under^t = (1-l_t) x_bar^{t-1} + l_t x^{t-1}
//   x^t       = prox(grad f(x_under^t), x^{t-1}, eta_t)
//   x_bar^t   = (1-l_t) x_bar^{t-1} + l_t x^t
// Returns x^1..x^k. Only used to cross-check PdgStep.
std::vector<Eigen::VectorXd> RunNesterovAg(
    const ProblemInstance& problem,
    const std::function<double(std::int64_t)>& lambda,
    const std::function<double(std::int64_t)>& eta, const Eigen::VectorXd& x0,
    std::int64_t k);

}  // namespace rpdg

#endif  // RPDG_PDG_H_
