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


#ifndef RPDG_CONFIG_H_
#define RPDG_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpdg/dataset.h"
#include "rpdg/schedule.h"

namespace rpdg {

// Run configuration files are INI text with three sections:
//
//   [instance]  family = random_quadratic | worst_case | logistic | absloss
//               m, n, mu, cond, seed, aligned, equal_lip, lip_scale,
//               consistent, box          (random_quadratic)
//               m, n_tilde, mu, Q        (worst_case; n_tilde = 0 picks the
//                                         smallest admissible size for k_max)
//               data, format, features, groups, mu   (logistic, absloss)
//   [solver]    method = pdg | rpdg | perturb | smooth | unconstrained
//               schedule, eps, lambda, k_max, seeds = 1,2,3 or
//               seed_count + seed_base, threads, record_objective, timing
//   [output]    dir, prefix
//
// Keys are case sensitive; ';' and '#' start comments. Unknown sections or
// keys, duplicates and keys outside a section are errors.

enum class InstanceFamily { kRandomQuadratic, kWorstCase, kLogistic, kAbsloss };
enum class SolverMethod { kPdg, kRpdg, kPerturb, kSmooth, kUnconstrained };

std::string_view InstanceFamilyName(InstanceFamily family);
std::string_view SolverMethodName(SolverMethod method);

struct InstanceConfig {
  InstanceFamily family = InstanceFamily::kRandomQuadratic;
  int m = 4;
  int n = 10;
  double mu = 1.0;
  double cond = 100.0;
  std::uint64_t seed = 1;
  bool aligned = false;
  bool equal_lip = false;
  double lip_scale = 1.0;
  bool consistent = false;
  double box = 0.0;  // half-width of a box around the origin; 0 = R^n
  int n_tilde = 0;
  double Q = 100.0;
  std::string data;
  DataFormat format = DataFormat::kCsv;
  int features = 0;
  int groups = 0;
};

struct SolverConfig {
  SolverMethod method = SolverMethod::kRpdg;
  std::optional<ScheduleKind> schedule;
  std::optional<double> eps;
  std::optional<double> lambda;
  std::int64_t k_max = 1000;
  std::vector<std::uint64_t> seeds{1};
  int threads = 0;
  bool record_objective = true;
  bool timing = false;
};

struct OutputConfig {
  std::string dir;  // empty: RPDG_OUTPUT_DIR, then "rpdg_out"
  std::string prefix = "run";
};

struct RunConfig {
  InstanceConfig instance;
  SolverConfig solver;
  OutputConfig output;

  // Throws kInvalidArgument on inconsistent settings.
  void Validate() const;
};

// Parses and validates. Errors are kParse (syntax, unknown keys, bad values)
// or kInvalidArgument (semantic checks).
RunConfig ParseConfig(std::string_view text);
RunConfig LoadConfig(const std::string& path);

// Every field in a fixed order; two configs that parse to the same settings
// have the same canonical text.
std::string CanonicalConfig(const RunConfig& config);
// 64-bit FNV-1a of the canonical text, as 16 hex digits.
std::string ConfigDigest(const RunConfig& config);
std::uint64_t Fnv1a64(std::string_view bytes);

inline constexpr std::string_view kOutputDirEnv = "RPDG_OUTPUT_DIR";
std::string ResolveOutputDir(const RunConfig& config);

}  // namespace rpdg

#endif  // RPDG_CONFIG_H_
