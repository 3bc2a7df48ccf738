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

#ifndef RPDG_SCHEDULE_H_
#define RPDG_SCHEDULE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rpdg {

enum class ScheduleKind {
  kPdgStronglyConvex,
  kPdgNonStrongly,
  kRpdgNonuniform,
  kRpdgUniform,
  kCustom,
};

std::string_view ScheduleKindName(ScheduleKind kind);
ScheduleKind ParseScheduleKind(std::string_view name);

// Parameters used by iteration t (1-based). theta_ratio = theta_t/theta_{t-1}
// and is unused at t = 1.
struct StepParams {
  double tau = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  double theta_ratio = 1.0;
};

struct Schedule {
  ScheduleKind kind = ScheduleKind::kCustom;
  // Constant parameters. Ignored by kPdgNonStrongly, whose parameters
  // depend on t and lip_f.
  double tau = 0.0;
  double eta = 0.0;
  double alpha_extrap = 0.0;
  // Sampling distribution; empty for PDG kinds.
  std::vector<double> probs;
  // Linear rate alpha of the theory; also fixes theta_t = contraction^-t.
  double contraction = 1.0;
  // C or C-bar for RPDG kinds.
  double cond_const = 0.0;
  // PDG kinds only; RPDG constants use the per-component L_i, so bound
  // curves take L_f from the problem.
  double lip_f = 0.0;
  double mu = 0.0;
  // True once the matching condition validator has passed.
  bool validated = false;

  StepParams At(std::int64_t t) const;
  bool is_pdg() const {
    return kind == ScheduleKind::kPdgStronglyConvex ||
           kind == ScheduleKind::kPdgNonStrongly;
  }
  bool is_rpdg() const {
    return kind == ScheduleKind::kRpdgNonuniform ||
           kind == ScheduleKind::kRpdgUniform;
  }
};

// Constant PDG policy for mu > 0.
Schedule PdgStronglyConvex(double lip_f, double mu);
// Variable PDG policy for mu >= 0: tau_t = (t-1)/2, eta_t = 4 lip_f/t,
// alpha_t = (t-1)/t, theta_t = t.
Schedule PdgNonStrongly(double lip_f);
StepParams PdgNonStronglyAt(double lip_f, std::int64_t t);

// RPDG constant policies. The FromC variant takes an explicit condition
// constant, for wrappers whose constants differ from 8L/mu.
Schedule RpdgNonuniform(std::span<const double> lip, double mu);
Schedule RpdgUniform(std::span<const double> lip, double mu);
Schedule RpdgFromC(ScheduleKind kind, std::vector<double> probs, double cond,
                   double mu);
std::vector<double> NonuniformProbabilities(std::span<const double> lip);

struct ConditionCheck {
  std::string name;
  double lhs = 0.0;  // at the worst index / iteration
  double rhs = 0.0;
  double slack = 0.0;           // min over indices, oriented so >= 0 passes
  double relative_slack = 0.0;  // slack / max(|lhs|, |rhs|, tiny)
  std::int64_t worst_index = -1;
  bool passed = false;
};

struct ConditionReport {
  std::vector<ConditionCheck> checks;
  bool ok() const;
  // Names of the failed checks, comma separated; empty when ok().
  std::string Violations() const;
};

inline constexpr double kConditionTolerance = 1e-10;

// (1-alpha)(1+tau) <= p_i, eta(1-alpha) <= alpha mu, eta tau p_i >= 4 L_i.
ConditionReport ValidateRpdgConditions(const Schedule& schedule,
                                       std::span<const double> lip, double mu);
// The five PDG conditions for t = 2..k (k >= 2).
ConditionReport ValidatePdgConditions(const Schedule& schedule, double lip_f,
                                      double mu, std::int64_t k);

enum class BoundTarget { kDist, kGap };
enum class Sampling { kNonuniform, kUniform };

struct IterationBoundInput {
  BoundTarget target = BoundTarget::kDist;
  Sampling sampling = Sampling::kNonuniform;
  int m = 1;
  double cond_const = 0.0;  // C or C-bar
  double lip_f = 0.0;
  double mu = 0.0;
  double p0 = 0.0;
  double eps = 0.0;
  std::optional<double> lambda;  // (eps, lambda)-variant
};

// Iteration counts K, K_u, K-tilde and K-tilde/2, rounded up. Returns 0 when
// the log argument is <= 1.
std::int64_t IterationBound(const IterationBoundInput& in);

enum class CurveKind {
  kPdgDist,
  kPdgGapStronglyConvex,
  kPdgGap,
  kRpdgDistNonuniform,
  kRpdgDistUniform,
  kRpdgGap,
  kRpdgDistGeneral,
  kRpdgGapGeneral,
};

std::string_view CurveKindName(CurveKind kind);
CurveKind ParseCurveKind(std::string_view name);

struct CurveParams {
  double mu = 0.0;
  double lip_f = 0.0;
  double alpha = 0.0;
  double eta = 0.0;  // general RPDG curves only
  double p0 = 0.0;   // P(x0, x*), or max_X P(x0, x) for gap certificates
};

double TheoreticalUpperCurve(CurveKind kind, const CurveParams& params,
                             std::int64_t k);

// The distance and gap curves that match a schedule.
CurveKind DistCurveFor(const Schedule& schedule);
CurveKind GapCurveFor(const Schedule& schedule);

}  // namespace rpdg

#endif  // RPDG_SCHEDULE_H_
