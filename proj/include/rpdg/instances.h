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

#ifndef RPDG_INSTANCES_H_
#define RPDG_INSTANCES_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "rpdg/dataset.h"
#include "rpdg/problem.h"
#include "rpdg/smoothing.h"

namespace rpdg {

// Components f_i(x) = 0.5 ||B_i x - c_i||^2 with B_i = diag(sqrt(s_i)) U_i^T,
// U_i orthogonal and s_i log-spaced over [scale_i / cond_target, scale_i].
struct RandomQuadraticOptions {
  int m = 1;
  int n = 1;
  double mu = 0.0;
  double cond_target = 10.0;
  std::uint64_t seed = 0;
  // Share one eigenbasis across components (then L_f = sum_i L_i).
  bool aligned = false;
  // All L_i equal to lip_scale; otherwise scale_i spreads over
  // [lip_scale/10, lip_scale].
  bool equal_lip = false;
  double lip_scale = 1.0;
  // Draw c_i = B_i x_true so that the system is consistent (f* = 0).
  bool consistent = false;
};

ProblemInstance MakeRandomQuadratic(const RandomQuadraticOptions& options);
ProblemInstance MakeRandomQuadratic(int m, int n, double mu, double cond_target,
                                    std::uint64_t seed);

// Least-squares components from explicit operators and targets. opt_x is
// solved from the normal equations when X is all of R^n and h has no l1
// part; a singular system then throws kInvalidArgument (pass
// require_opt = false to leave opt_x empty instead).
ProblemInstance MakeLeastSquares(std::vector<Eigen::MatrixXd> ops,
                                 std::vector<Eigen::VectorXd> targets,
                                 double mu,
                                 FeasibleSet set = FeasibleSet::AllSpace(),
                                 CompositeTerm h = CompositeTerm::Zero(),
                                 bool require_opt = true);

// Splits rows 0..rows-1 into `groups` contiguous groups of near-equal size.
std::vector<std::vector<int>> RowGroups(int rows, int groups);

// f_i(x) = sum over the rows r of group i of log(1 + exp(-b_r a_r^T x)).
// groups = 0 means one component per row. L_i = lambda_max(A_i^T A_i) / 4,
// which is ||a_r||^2 / 4 for single rows. Labels must be -1 or +1.
ProblemInstance MakeLogistic(const DatasetMatrix& data, double mu,
                             int groups = 0);

// f_i(x) = |a_i^T x - b_i| = max_{y in [-1,1]} (a_i^T x - b_i) y, one
// component per row, with delta = 1 until a wrapper chooses it.
NonsmoothProblem MakeAbslossNonsmooth(const DatasetMatrix& data, double mu);

}  // namespace rpdg

#endif  // RPDG_INSTANCES_H_
