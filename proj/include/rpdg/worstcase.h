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

#ifndef RPDG_WORSTCASE_H_
#define RPDG_WORSTCASE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "rpdg/problem.h"
#include "rpdg/schedule.h"

namespace rpdg {

// Block-separable lower-bound family over R^{m * n_tilde}:
//   f_i(x) = scale * [0.5 <A x_i, x_i> - x_{i,1}],  scale = mu (Q - 1) / 4,
// where A is tridiagonal with 2 on the diagonal, -1 off it, and the last
// diagonal entry replaced by kappa = (sqrt(Q) + 3) / (sqrt(Q) + 1).
struct WorstCaseSpec {
  int m = 1;
  int n_tilde = 1;
  double mu = 1.0;
  double Q = 2.0;

  // Throws kInvalidArgument unless m >= 1, n_tilde >= 1, mu > 0, Q > 1.
  void Validate() const;
  int n() const { return m * n_tilde; }
  double kappa() const;
  double q() const;  // (sqrt(Q) - 1) / (sqrt(Q) + 1)
  double scale() const;
};

// out = A x for the n_tilde x n_tilde tridiagonal matrix.
void TridiagonalApply(int n_tilde, double kappa, const double* x, double* out);
Eigen::MatrixXd WorstCaseMatrix(int n_tilde, double Q);

ProblemInstance BuildWorstCase(const WorstCaseSpec& spec);

// x*_{i,j} = q^j in every block (j = 1..n_tilde).
Eigen::VectorXd AnalyticSolution(const WorstCaseSpec& spec);

// 0.5 exp(-4 k sqrt(Q) / (m (sqrt(Q) + 1)^2 - 4 sqrt(Q))).
double LowerBoundCurve(int m, double Q, std::int64_t k);

// The real-valued dimension threshold m log[(1 - (1-q^2)/m)^k / 2] / (2 log q).
double LowerBoundDimension(int m, double Q, std::int64_t k);

struct MinDimension {
  int n = 0;
  int n_tilde = 0;
};
// Smallest n = m * n_tilde at or above LowerBoundDimension; n_tilde = 1 when
// the threshold is not positive.
MinDimension MinimumDimension(int m, double Q, std::int64_t k);

struct SandwichReport {
  WorstCaseSpec spec;
  ScheduleKind kind = ScheduleKind::kRpdgUniform;
  int seeds = 0;
  std::int64_t k_max = 0;
  // Index k - 1 holds iteration k. Ratios are ||x^k - x*||^2 / ||x^0 - x*||^2.
  std::vector<double> lower;
  std::vector<double> mean_ratio;
  std::vector<double> se_ratio;
  std::vector<double> upper;
  std::int64_t lower_violations = 0;  // mean + 3 SE < lower
  std::int64_t upper_violations = 0;  // mean - 3 SE > upper
  std::optional<std::int64_t> first_lower_violation;
  std::optional<std::int64_t> first_upper_violation;
  // Gradient evaluations m + k at the first k with mean ratio <= 1e-4, and the
  // bound it is compared against (iteration bound + m).
  std::optional<std::int64_t> crossing_grad_evals;
  std::int64_t crossing_budget = 0;
  bool ok() const;
  // Only the sampled distribution is exercised; the lower bound is claimed
  // for every distribution.
  std::string Header() const;
};

inline constexpr double kCrossingLevel = 1e-4;

// Runs RPDG from x0 = 0 with the given rpdg kind and compares the mean
// normalized squared distance with the lower and upper curves using a 3 SE
// one-sided band. Throws kDimensionTooSmall when n_tilde is below the
// threshold for k_max.
SandwichReport RunBoundSandwich(const WorstCaseSpec& spec, ScheduleKind kind,
                                const std::vector<std::uint64_t>& seeds,
                                std::int64_t k_max, int threads = 0);

}  // namespace rpdg

#endif  // RPDG_WORSTCASE_H_
