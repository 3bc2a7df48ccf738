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

#ifndef RPDG_SAMPLER_H_
#define RPDG_SAMPLER_H_

#include <cstdint>
#include <vector>

namespace rpdg {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t SplitMix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draw number `counter` of stream `seed`: SplitMix64 in counter mode, so any
// draw is computable without replaying the stream.
constexpr std::uint64_t CounterDraw(std::uint64_t seed, std::uint64_t counter) {
  return SplitMix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform on [0, 1) from the top 53 bits.
constexpr double CounterUniform(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(CounterDraw(seed, counter) >> 11) * 0x1.0p-53;
}

// Standard normal from draws (2c, 2c+1) of stream `seed` via Box-Muller.
// Used by the instance generators so that generated data does not depend on
// the standard library's distribution implementations.
double CounterGaussian(std::uint64_t seed, std::uint64_t counter);

// Inverse-CDF sampler over {0, ..., m-1}. Index i owns (c_{i-1}, c_i] of the
// cumulative array; a draw exactly on a boundary goes to the lower index and
// zero-probability indices are never returned.
class Sampler {
 public:
  Sampler(std::vector<double> probs, std::uint64_t seed);

  // Index used by iteration t (t >= 1). Pure function of (seed, t).
  int SampleIndex(std::int64_t t) const;
  // Index for a given uniform draw u in [0, 1).
  int IndexFor(double u) const;

  const std::vector<double>& probs() const { return probs_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  std::uint64_t seed_;
  int last_positive_ = 0;
};

}  // namespace rpdg

#endif  // RPDG_SAMPLER_H_
