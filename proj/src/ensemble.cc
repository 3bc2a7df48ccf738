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

#include "rpdg/ensemble.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "rpdg/error.h"
#include "rpdg/rpdg.h"

namespace rpdg {

double SortedQuantile(const std::vector<double>& sorted, double q) {
  Require(!sorted.empty(), ErrorCode::kInvalidArgument, "empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SeriesStats Summarize(const std::vector<std::vector<double>>& per_seed) {
  SeriesStats stats;
  if (per_seed.empty()) return stats;
  const std::size_t len = per_seed.front().size();
  const double n = static_cast<double>(per_seed.size());
  for (const auto& s : per_seed) {
    Require(s.size() == len, ErrorCode::kInvalidArgument,
            "series of unequal length");
  }
  stats.mean.resize(len);
  stats.std_error.resize(len);
  stats.q10.resize(len);
  stats.q50.resize(len);
  stats.q90.resize(len);
  std::vector<double> column(per_seed.size());
  for (std::size_t k = 0; k < len; ++k) {
    double sum = 0.0;
    for (std::size_t s = 0; s < per_seed.size(); ++s) {
      column[s] = per_seed[s][k];
      sum += column[s];
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : column) ss += (v - mean) * (v - mean);
    stats.mean[k] = mean;
    stats.std_error[k] = n > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    std::sort(column.begin(), column.end());
    stats.q10[k] = SortedQuantile(column, 0.1);
    stats.q50[k] = SortedQuantile(column, 0.5);
    stats.q90[k] = SortedQuantile(column, 0.9);
  }
  return stats;
}

std::vector<std::uint64_t> SeedRange(std::uint64_t base, int count) {
  std::vector<std::uint64_t> seeds(std::max(count, 0));
  for (int s = 0; s < count; ++s) seeds[s] = base + static_cast<std::uint64_t>(s);
  return seeds;
}

EnsembleStats RunRpdgEnsemble(const ProblemInstance& problem,
                              const Schedule& schedule,
                              const Eigen::VectorXd& x0,
                              const EnsembleOptions& options) {
  Require(options.seeds.size() >= 2, ErrorCode::kInvalidArgument,
          "an ensemble needs at least two seeds");
  Require(!options.record_dist || problem.opt_x.has_value(),
          ErrorCode::kInvalidArgument, "distance series need a known opt_x");
  double psi_star = 0.0;
  if (options.record_gap) {
    Require(problem.has_objective(), ErrorCode::kObjectiveUnavailable,
            "gap series need value oracles");
    Require(options.psi_star.has_value() || problem.opt_x.has_value(),
            ErrorCode::kInvalidArgument, "gap series need Psi* or opt_x");
    psi_star = options.psi_star ? *options.psi_star
                                : ObjectiveValue(problem, *problem.opt_x);
  }

  const std::size_t count = options.seeds.size();
  const std::size_t len = static_cast<std::size_t>(options.k_max);
  EnsembleStats out;
  out.k_max = options.k_max;
  out.seeds = static_cast<int>(count);
  out.m = problem.m;
  if (options.record_dist) out.dist_per_seed.assign(count, {});
  if (options.record_gap) out.gap_per_seed.assign(count, {});
  std::vector<std::exception_ptr> errors(count);

  auto run_seed = [&](std::size_t s) {
    try {
      std::vector<double> dist, gap;
      if (options.record_dist) dist.reserve(len);
      if (options.record_gap) gap.reserve(len);
      RunRpdgObserved(problem, schedule, x0, options.k_max, options.seeds[s],
                      [&](const RpdgState& state) {
                        if (options.record_dist) {
                          dist.push_back(
                              PrimalProxDistance(state.x_prev, *problem.opt_x));
                        }
                        if (options.record_gap) {
                          gap.push_back(
                              ObjectiveValue(problem, state.ergodic.mean()) -
                              psi_star);
                        }
                        return true;
                      });
      if (options.record_dist) out.dist_per_seed[s] = std::move(dist);
      if (options.record_gap) out.gap_per_seed[s] = std::move(gap);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };

  int workers = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(count));
  if (workers == 1) {
    for (std::size_t s = 0; s < count; ++s) run_seed(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < count; s = next++) run_seed(s);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (options.record_dist) out.dist = Summarize(out.dist_per_seed);
  if (options.record_gap) out.gap = Summarize(out.gap_per_seed);
  return out;
}

}  // namespace rpdg
