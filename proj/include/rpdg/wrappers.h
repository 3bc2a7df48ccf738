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

#ifndef RPDG_WRAPPERS_H_
#define RPDG_WRAPPERS_H_

#include <cstdint>
#include <optional>

#include "Eigen/Core"
#include "rpdg/problem.h"
#include "rpdg/schedule.h"
#include "rpdg/smoothing.h"
#include "rpdg/trace.h"

namespace rpdg {

// kExpectation targets E[gap] <= eps; kProbability targets
// Prob{gap > eps} <= lambda through the lambda * eps budget.
enum class GuaranteeMode { kExpectation, kProbability };

struct WrapperOptions {
  std::uint64_t seed = 0;
  // Cap on the computed budget; 0 means uncapped.
  std::int64_t max_iterations = 0;
  GuaranteeMode mode = GuaranteeMode::kExpectation;
  double lambda = 0.1;
  RecordOptions record{.objective = false, .wall_time = false, .bound = false};
};

struct WrapperResult {
  Eigen::VectorXd x_bar;
  Trace trace;
  std::int64_t budget = 0;      // iterations prescribed by the bound
  std::int64_t iterations = 0;  // iterations run (budget after capping)
  double delta = 0.0;           // perturbation or smoothing parameter
  Schedule schedule;
  // Unconstrained reduction only, when opt_x is known.
  std::optional<double> relative_accuracy;
};

// delta = eps / (2 Omega_X^2), Omega_X^2 = max_X P(x0, x).
struct PerturbationSpec {
  double eps = 0.0;
  double omega_x_sq = 0.0;
  Eigen::VectorXd x_anchor;
  double delta = 0.0;
};

PerturbationSpec MakePerturbationSpec(const ProblemInstance& problem, double eps,
                                      const Eigen::VectorXd& x0);

// Psi_delta = Psi + delta P(x0, .) written as mu' = delta and
// h' = h - delta <x0, .>; the dropped constant is delta/2 ||x0||^2.
ProblemInstance PerturbedInstance(const ProblemInstance& problem,
                                  const PerturbationSpec& spec);
double PerturbedObjective(const ProblemInstance& perturbed,
                          const PerturbationSpec& spec, const Eigen::VectorXd& x);

// mu = 0 problems on bounded X: RPDG (nonuniform policy) on Psi_delta for
// K-tilde(eps/2) iterations with P0 = Omega_X^2. Returns x0 when the budget
// is zero.
WrapperResult PerturbSolve(const ProblemInstance& problem, double eps,
                           const Eigen::VectorXd& x0,
                           const WrapperOptions& options = {});

// Smooths with delta = eps / (2 Omega_Y^2), then runs RPDG for
// K-tilde(eps/2) iterations (mu > 0) or PerturbSolve(eps/2) (mu = 0, bounded
// X).
WrapperResult SmoothSolve(const NonsmoothProblem& problem, double eps,
                          const Eigen::VectorXd& x0,
                          const WrapperOptions& options = {});

// X = R^n, h = 0, mu = 0: RPDG on f + delta/2 ||x - x0||^2 with
// delta = L eps_rel / 2 and C = 8 (L + delta) / delta.
WrapperResult UnconstrainedSolve(const ProblemInstance& problem, double eps_rel,
                                 const Eigen::VectorXd& x0,
                                 const WrapperOptions& options = {});

// Iteration count after which the bound of the unconstrained reduction
// drops to eps_rel.
std::int64_t UnconstrainedBudget(int m, double eps_rel, double alpha);

// 2 (f(x) - f*) / (L (1 + ||x0 - x*||^2)).
double RelativeAccuracy(double f_x, double f_star, double total_lip,
                        double dist_sq);

}  // namespace rpdg

#endif  // RPDG_WRAPPERS_H_
