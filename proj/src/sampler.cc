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

#include "rpdg/sampler.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

Sampler::Sampler(std::vector<double> probs, std::uint64_t seed)
    : probs_(std::move(probs)), seed_(seed) {
  Require(!probs_.empty(), ErrorCode::kInvalidArgument,
          "sampler needs at least one probability");
  cumulative_.resize(probs_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    Require(probs_[i] >= 0.0 && std::isfinite(probs_[i]),
            ErrorCode::kInvalidArgument, "probabilities must be >= 0");
    sum += probs_[i];
    cumulative_[i] = sum;
    if (probs_[i] > 0.0) last_positive_ = static_cast<int>(i);
  }
  Require(std::abs(sum - 1.0) <= 1e-12, ErrorCode::kInvalidArgument,
          fmt::format("probabilities sum to {:.17g}, not 1", sum));
  // Absorb the rounding residue so that every u in [0, 1) has an owner.
  for (std::size_t i = last_positive_; i < cumulative_.size(); ++i) {
    cumulative_[i] = 1.0;
  }
}

double CounterGaussian(std::uint64_t seed, std::uint64_t counter) {
  // 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - CounterUniform(seed, 2 * counter);
  const double u2 = CounterUniform(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int Sampler::IndexFor(double u) const {
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  int i = static_cast<int>(it - cumulative_.begin());
  // u on a boundary shared with zero-mass entries: step to the next owner.
  while (i < last_positive_ && probs_[i] == 0.0) ++i;
  return std::min(i, last_positive_);
}

int Sampler::SampleIndex(std::int64_t t) const {
  if (probs_.size() == 1) return 0;
  return IndexFor(CounterUniform(seed_, static_cast<std::uint64_t>(t)));
}

}  // namespace rpdg
