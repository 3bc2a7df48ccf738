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

#ifndef RPDG_ENSEMBLE_H_
#define RPDG_ENSEMBLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "rpdg/problem.h"
#include "rpdg/schedule.h"

namespace rpdg {

// Across-seed statistics, one entry per iteration k = 1..k_max.
struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::vector<double> q10;
  std::vector<double> q50;
  std::vector<double> q90;

  bool empty() const { return mean.empty(); }
};

struct EnsembleOptions {
  std::int64_t k_max = 0;
  std::vector<std::uint64_t> seeds;
  bool record_dist = true;  // P(x^k, x*), needs opt_x
  bool record_gap = false;  // Psi(x-bar^k) - Psi*, needs value oracles
  // Psi*; defaults to Psi(opt_x).
  std::optional<double> psi_star;
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
};

struct EnsembleStats {
  std::int64_t k_max = 0;
  int seeds = 0;
  int m = 0;
  SeriesStats dist;
  SeriesStats gap;
  // Per-seed series, kept for callers that need more than the summary.
  std::vector<std::vector<double>> dist_per_seed;
  std::vector<std::vector<double>> gap_per_seed;
};

// Runs one RPDG trajectory per seed on a worker pool. Each seed writes to its
// own slot and the summary is reduced in seed order, so results do not depend
// on scheduling.
EnsembleStats RunRpdgEnsemble(const ProblemInstance& problem,
                              const Schedule& schedule,
                              const Eigen::VectorXd& x0,
                              const EnsembleOptions& options);

// Column-wise statistics of equally long series (rows = seeds).
SeriesStats Summarize(const std::vector<std::vector<double>>& per_seed);

// Linear-interpolation quantile of an ascending sample, 0 <= q <= 1.
double SortedQuantile(const std::vector<double>& sorted, double q);

// seeds base, base+1, ..., base+count-1.
std::vector<std::uint64_t> SeedRange(std::uint64_t base, int count);

}  // namespace rpdg

#endif  // RPDG_ENSEMBLE_H_
