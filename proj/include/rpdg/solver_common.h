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

#ifndef RPDG_SOLVER_COMMON_H_
#define RPDG_SOLVER_COMMON_H_

#include <cstdint>
#include <optional>

#include "Eigen/Core"
#include "rpdg/trace.h"

namespace rpdg {

// Running weighted mean sum_s theta_s x_s / sum_s theta_s, fed with the ratio
// theta_t/theta_{t-1} so that theta_t itself is never formed. Internally keeps
// r_t = sum_{s<=t} theta_s / theta_t = 1 + r_{t-1} theta_{t-1}/theta_t.
class ErgodicMean {
 public:
  void Add(const Eigen::VectorXd& x, double theta_ratio) {
    if (count_ == 0) {
      mean_ = x;
      ratio_ = 1.0;
    } else {
      ratio_ = 1.0 + ratio_ / theta_ratio;
      mean_ += (x - mean_) / ratio_;
    }
    ++count_;
  }

  const Eigen::VectorXd& mean() const { return mean_; }
  std::int64_t count() const { return count_; }

 private:
  Eigen::VectorXd mean_;
  double ratio_ = 0.0;
  std::int64_t count_ = 0;
};

struct SolveResult {
  Eigen::VectorXd x;      // last iterate
  Eigen::VectorXd x_bar;  // ergodic mean (x0 when no iteration ran)
  Trace trace;
  std::int64_t iterations = 0;
  std::int64_t grad_evals = 0;
  // Primal-dual gap of the ergodic pair and the matching theoretical bound,
  // when they can be certified (see RunPdg).
  std::optional<double> gap_certificate;
  std::optional<double> gap_certificate_bound;
  // Largest relative drift observed between the running aggregated gradient
  // and its full resummation (RPDG only).
  double max_gsum_drift = 0.0;
};

}  // namespace rpdg

#endif  // RPDG_SOLVER_COMMON_H_
