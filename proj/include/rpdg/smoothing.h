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

#ifndef RPDG_SMOOTHING_H_
#define RPDG_SMOOTHING_H_

#include <memory>
#include <vector>

#include "Eigen/Core"
#include "rpdg/problem.h"

namespace rpdg {

// One max-structured component f_i(x) = max_{y in Y_i} <A_i x, y> - <q_i, y>,
// smoothed with v_i(y) = 0.5 ||y - y_c||^2 around y_c = Proj_{Y_i}(0).
struct SmoothingComponent {
  Eigen::MatrixXd op;          // A_i, dual dimension x n
  Eigen::VectorXd offset;      // q_i
  FeasibleSet dual_set;        // box or ball
  Eigen::VectorXd prox_center;  // y_c
  double op_norm_sq = 0.0;      // ||A_i||_2^2
  double omega_sq = 0.0;        // max_{y in Y_i} v_i(y)
};

// Fills prox_center, op_norm_sq and omega_sq. Throws kUnsupported for dual
// sets other than box or ball.
SmoothingComponent MakeSmoothingComponent(Eigen::MatrixXd op,
                                          Eigen::VectorXd offset,
                                          FeasibleSet dual_set);

struct SmoothingSpec {
  int n = 0;
  std::vector<SmoothingComponent> components;
  double delta = 0.0;
  std::vector<double> lip_tilde;  // ||A_i||^2 / delta
  double omega_y_sq = 0.0;        // sum_i omega_sq

  int m() const { return static_cast<int>(components.size()); }
};

SmoothingSpec MakeSmoothingSpec(int n, std::vector<SmoothingComponent> components,
                                double delta);
// Copy with a new delta (and lip_tilde).
SmoothingSpec WithDelta(SmoothingSpec spec, double delta);

struct ValueGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

// Smoothed value and gradient through the closed-form maximizer
// y* = Proj_Y(y_c + (A_i x - q_i) / delta).
ValueGradient SmoothComponentValueGrad(const SmoothingSpec& spec, int i,
                                       const Eigen::VectorXd& x);
// The nonsmooth f_i(x).
double ExactComponentValue(const SmoothingSpec& spec, int i,
                           const Eigen::VectorXd& x);

// Nonsmooth composite problem sum_i f_i + h + mu omega over X.
struct NonsmoothProblem {
  SmoothingSpec spec;
  double mu = 0.0;
  CompositeTerm h;
  FeasibleSet feasible_set;
};

double NonsmoothObjective(const NonsmoothProblem& problem,
                          const Eigen::VectorXd& x);

// The smooth surrogate with constants lip_tilde and
// lip_f = lambda_max(sum_i A_i^T A_i) / delta.
ProblemInstance SmoothedInstance(const NonsmoothProblem& problem, double delta);

}  // namespace rpdg

#endif  // RPDG_SMOOTHING_H_
