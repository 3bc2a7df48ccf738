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

#include "rpdg/schedule.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

namespace {

constexpr struct {
  ScheduleKind kind;
  std::string_view name;
} kScheduleNames[] = {
    {ScheduleKind::kPdgStronglyConvex, "pdg_strongly_convex"},
    {ScheduleKind::kPdgNonStrongly, "pdg_nonstrongly"},
    {ScheduleKind::kRpdgNonuniform, "rpdg_nonuniform"},
    {ScheduleKind::kRpdgUniform, "rpdg_uniform"},
    {ScheduleKind::kCustom, "custom"},
};

constexpr struct {
  CurveKind kind;
  std::string_view name;
} kCurveNames[] = {
    {CurveKind::kPdgDist, "pdg_dist"},
    {CurveKind::kPdgGapStronglyConvex, "pdg_gap_sc"},
    {CurveKind::kPdgGap, "pdg_gap"},
    {CurveKind::kRpdgDistNonuniform, "rpdg_dist_nonuniform"},
    {CurveKind::kRpdgDistUniform, "rpdg_dist_uniform"},
    {CurveKind::kRpdgGap, "rpdg_gap"},
    {CurveKind::kRpdgDistGeneral, "rpdg_dist_general"},
    {CurveKind::kRpdgGapGeneral, "rpdg_gap_general"},
};

void RequireMu(double mu, std::string_view who) {
  Require(mu > 0.0 && std::isfinite(mu), ErrorCode::kInvalidSchedule,
          fmt::format("{} needs mu > 0 (got {}); use pdg_nonstrongly or a "
                      "perturbation wrapper for mu = 0",
                      who, mu));
}

void RequireLip(std::span<const double> lip) {
  Require(!lip.empty(), ErrorCode::kInvalidSchedule, "empty lip vector");
  double sum = 0.0;
  for (double l : lip) {
    Require(l >= 0.0 && std::isfinite(l), ErrorCode::kInvalidSchedule,
            "Lipschitz constants must be finite and nonnegative");
    sum += l;
  }
  Require(sum > 0.0, ErrorCode::kInvalidSchedule,
          "all Lipschitz constants are zero");
}

ConditionCheck MakeCheck(std::string name, double lhs, double rhs, double slack,
                         std::int64_t index) {
  ConditionCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = slack;
  const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                 std::numeric_limits<double>::min()});
  c.relative_slack = slack / scale;
  c.worst_index = index;
  return c;
}

// Accumulator start value; loses against any real check.
ConditionCheck Unset() {
  ConditionCheck c;
  c.relative_slack = std::numeric_limits<double>::infinity();
  return c;
}

// Keeps the check with the smallest relative slack.
void Merge(ConditionCheck& worst, ConditionCheck candidate) {
  if (candidate.relative_slack < worst.relative_slack) {
    worst = std::move(candidate);
  }
}

void Finish(ConditionReport& report, ConditionCheck check) {
  check.passed = check.relative_slack >= -kConditionTolerance;
  report.checks.push_back(std::move(check));
}

}  // namespace

std::string_view ScheduleKindName(ScheduleKind kind) {
  for (const auto& e : kScheduleNames) {
    if (e.kind == kind) return e.name;
  }
  return "?";
}

ScheduleKind ParseScheduleKind(std::string_view name) {
  for (const auto& e : kScheduleNames) {
    if (e.name == name) return e.kind;
  }
  Fail(ErrorCode::kInvalidArgument,
       fmt::format("unknown schedule kind '{}'", name));
}

std::string_view CurveKindName(CurveKind kind) {
  for (const auto& e : kCurveNames) {
    if (e.kind == kind) return e.name;
  }
  return "?";
}

CurveKind ParseCurveKind(std::string_view name) {
  for (const auto& e : kCurveNames) {
    if (e.name == name) return e.kind;
  }
  Fail(ErrorCode::kInvalidArgument,
       fmt::format("unknown bound curve kind '{}'", name));
}

StepParams Schedule::At(std::int64_t t) const {
  Require(t >= 1, ErrorCode::kInvalidArgument, "iterations are 1-based");
  if (kind == ScheduleKind::kPdgNonStrongly) return PdgNonStronglyAt(lip_f, t);
  return {tau, eta, alpha_extrap, 1.0 / contraction};
}

Schedule PdgStronglyConvex(double lip_f, double mu) {
  RequireMu(mu, "pdg_strongly_convex");
  Require(lip_f > 0.0 && std::isfinite(lip_f), ErrorCode::kInvalidSchedule,
          "lip_f must be > 0");
  const double root = std::sqrt(2.0 * lip_f / mu);
  Schedule s;
  s.kind = ScheduleKind::kPdgStronglyConvex;
  s.tau = root;
  s.eta = std::sqrt(2.0 * lip_f * mu);
  s.alpha_extrap = root / (1.0 + root);
  s.contraction = s.alpha_extrap;
  s.lip_f = lip_f;
  s.mu = mu;
  s.validated = true;
  return s;
}

Schedule PdgNonStrongly(double lip_f) {
  Require(lip_f > 0.0 && std::isfinite(lip_f), ErrorCode::kInvalidSchedule,
          "lip_f must be > 0");
  Schedule s;
  s.kind = ScheduleKind::kPdgNonStrongly;
  s.lip_f = lip_f;
  s.validated = true;
  return s;
}

StepParams PdgNonStronglyAt(double lip_f, std::int64_t t) {
  Require(t >= 1, ErrorCode::kInvalidArgument,
          "pdg_nonstrongly parameters are defined for t >= 1");
  const double td = static_cast<double>(t);
  StepParams p;
  p.tau = (td - 1.0) / 2.0;
  p.eta = 4.0 * lip_f / td;
  p.alpha = (td - 1.0) / td;
  p.theta_ratio = t > 1 ? td / (td - 1.0) : 1.0;
  return p;
}

std::vector<double> NonuniformProbabilities(std::span<const double> lip) {
  RequireLip(lip);
  const double m = static_cast<double>(lip.size());
  const double total = std::accumulate(lip.begin(), lip.end(), 0.0);
  std::vector<double> p(lip.size());
  for (std::size_t i = 0; i < lip.size(); ++i) {
    p[i] = 1.0 / (2.0 * m) + lip[i] / (2.0 * total);
  }
  return p;
}

Schedule RpdgFromC(ScheduleKind kind, std::vector<double> probs, double cond,
                   double mu) {
  Require(kind == ScheduleKind::kRpdgNonuniform ||
              kind == ScheduleKind::kRpdgUniform,
          ErrorCode::kInvalidArgument, "RpdgFromC needs an rpdg kind");
  RequireMu(mu, ScheduleKindName(kind));
  Require(cond > 0.0 && std::isfinite(cond), ErrorCode::kInvalidSchedule,
          "condition constant must be finite and > 0");
  const double m = static_cast<double>(probs.size());
  Require(m >= 1, ErrorCode::kInvalidSchedule, "empty distribution");
  const double root = std::sqrt((m - 1.0) * (m - 1.0) + 4.0 * m * cond);
  Schedule s;
  s.kind = kind;
  s.tau = (root - (m - 1.0)) / (2.0 * m);
  s.eta = mu * (root + (m - 1.0)) / 2.0;
  const double numer = kind == ScheduleKind::kRpdgUniform ? 2.0 : 1.0;
  // Rounded up by one ulp: alpha is within 1e-6 of 1 for large C, where the
  // rounding of 1 - numer/(...) alone moves 1 - alpha by ~1e-10 relative and
  // can break the (tight) first two conditions. The larger alpha only
  // loosens the rate by one ulp.
  s.alpha_extrap = std::nextafter(1.0 - numer / ((m + 1.0) + root), 1.0);
  s.contraction = s.alpha_extrap;
  s.cond_const = cond;
  s.probs = std::move(probs);
  s.mu = mu;
  return s;
}

Schedule RpdgNonuniform(std::span<const double> lip, double mu) {
  RequireMu(mu, "rpdg_nonuniform");
  RequireLip(lip);
  const double total = std::accumulate(lip.begin(), lip.end(), 0.0);
  Schedule s = RpdgFromC(ScheduleKind::kRpdgNonuniform,
                         NonuniformProbabilities(lip), 8.0 * total / mu, mu);
  s.validated = ValidateRpdgConditions(s, lip, mu).ok();
  return s;
}

Schedule RpdgUniform(std::span<const double> lip, double mu) {
  RequireMu(mu, "rpdg_uniform");
  RequireLip(lip);
  const double m = static_cast<double>(lip.size());
  const double lmax = *std::max_element(lip.begin(), lip.end());
  Schedule s = RpdgFromC(ScheduleKind::kRpdgUniform,
                         std::vector<double>(lip.size(), 1.0 / m),
                         4.0 * m * lmax / mu, mu);
  s.validated = ValidateRpdgConditions(s, lip, mu).ok();
  return s;
}

bool ConditionReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConditionCheck& c) { return c.passed; });
}

std::string ConditionReport::Violations() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += ", ";
    out += c.name;
  }
  return out;
}

ConditionReport ValidateRpdgConditions(const Schedule& schedule,
                                       std::span<const double> lip, double mu) {
  Require(schedule.probs.size() == lip.size(), ErrorCode::kInvalidArgument,
          fmt::format("schedule has {} probabilities for {} components",
                      schedule.probs.size(), lip.size()));
  const double a = schedule.alpha_extrap;
  const double tau = schedule.tau;
  const double eta = schedule.eta;

  ConditionReport report;
  ConditionCheck s1 = Unset(), s3 = Unset();
  for (std::size_t i = 0; i < lip.size(); ++i) {
    const double p = schedule.probs[i];
    const double lhs1 = (1.0 - a) * (1.0 + tau);
    Merge(s1, MakeCheck("cond_s1", lhs1, p, p - lhs1, i));
    const double lhs3 = eta * tau * p;
    const double rhs3 = 4.0 * lip[i];
    Merge(s3, MakeCheck("cond_s3", lhs3, rhs3, lhs3 - rhs3, i));
  }
  Finish(report, std::move(s1));
  const double lhs2 = eta * (1.0 - a);
  const double rhs2 = a * mu;
  Finish(report, MakeCheck("cond_s2", lhs2, rhs2, rhs2 - lhs2, -1));
  Finish(report, std::move(s3));
  return report;
}

ConditionReport ValidatePdgConditions(const Schedule& schedule, double lip_f,
                                      double mu, std::int64_t k) {
  Require(k >= 2, ErrorCode::kInvalidArgument,
          "PDG conditions need k >= 2 iterations");
  ConditionCheck d1 = Unset(), d2 = Unset(), d3 = Unset(), d5 = Unset();
  for (std::int64_t t = 2; t <= k; ++t) {
    const StepParams prev = schedule.At(t - 1);
    const StepParams cur = schedule.At(t);
    // theta_t / theta_{t-1} scales the left-hand sides of d1 and d2.
    const double r = cur.theta_ratio;
    Merge(d1, MakeCheck("cond_d1", r * cur.tau, 1.0 + prev.tau,
                        1.0 + prev.tau - r * cur.tau, t));
    Merge(d2, MakeCheck("cond_d2", r * cur.eta, mu + prev.eta,
                        mu + prev.eta - r * cur.eta, t));
    const double lhs3 = prev.eta * cur.tau;
    const double rhs3 = 2.0 * lip_f * cur.alpha;
    Merge(d3, MakeCheck("cond_d3", lhs3, rhs3, lhs3 - rhs3, t));
    const double inv = 1.0 / r;
    Merge(d5, MakeCheck("cond_d5", cur.alpha, inv, -std::abs(cur.alpha - inv),
                        t));
  }
  const StepParams last = schedule.At(k);
  const double lhs4 = last.eta * (1.0 + last.tau);
  ConditionReport report;
  Finish(report, std::move(d1));
  Finish(report, std::move(d2));
  Finish(report, std::move(d3));
  Finish(report, MakeCheck("cond_d4", lhs4, 2.0 * lip_f, lhs4 - 2.0 * lip_f, k));
  Finish(report, std::move(d5));
  return report;
}

std::int64_t IterationBound(const IterationBoundInput& in) {
  Require(in.eps > 0.0, ErrorCode::kInvalidArgument, "eps must be > 0");
  Require(in.p0 > 0.0, ErrorCode::kInvalidArgument, "P0 must be > 0");
  Require(in.m >= 1, ErrorCode::kInvalidArgument, "m must be >= 1");
  Require(in.mu > 0.0, ErrorCode::kInvalidArgument, "mu must be > 0");
  Require(in.cond_const > 0.0, ErrorCode::kInvalidArgument,
          "condition constant must be > 0");
  double eps = in.eps;
  if (in.lambda) {
    Require(*in.lambda > 0.0 && *in.lambda < 1.0, ErrorCode::kInvalidArgument,
            "lambda must lie in (0, 1)");
    eps *= *in.lambda;
  }
  const double m = in.m;
  const double ratio = in.lip_f / in.mu;
  const double span =
      (m + 1.0) + std::sqrt((m - 1.0) * (m - 1.0) + 4.0 * m * in.cond_const);
  double factor = 0.0;
  double arg = 0.0;
  if (in.target == BoundTarget::kDist) {
    if (in.sampling == Sampling::kNonuniform) {
      factor = span;
      arg = (1.0 + 3.0 * ratio) * in.p0 / eps;
    } else {
      factor = span / 2.0;
      arg = (1.0 + ratio) * in.p0 / eps;
    }
  } else {
    const double c = in.mu + 2.0 * in.lip_f + in.lip_f * ratio;
    factor = 2.0 * span;
    // The uniform gap count is stated as half of K-tilde.
    if (in.sampling == Sampling::kUniform) factor /= 2.0;
    arg = 2.0 * c * (m + std::sqrt(m * in.cond_const)) * in.p0 / eps;
  }
  if (!(arg > 1.0)) return 0;
  const double k = std::ceil(factor * std::log(arg));
  Require(std::isfinite(k) && k < 9.0e18, ErrorCode::kInvalidArgument,
          "iteration bound overflows");
  return static_cast<std::int64_t>(k);
}

double TheoreticalUpperCurve(CurveKind kind, const CurveParams& p,
                             std::int64_t k) {
  Require(k >= 0, ErrorCode::kInvalidArgument, "k must be >= 0");
  const double kd = static_cast<double>(k);
  const double ak = std::pow(p.alpha, kd);
  switch (kind) {
    case CurveKind::kPdgDist:
      return (p.mu + p.lip_f) / p.mu * ak * p.p0;
    case CurveKind::kPdgGapStronglyConvex: {
      const double r = p.lip_f / p.mu;
      return p.mu / (1.0 - p.alpha) * (1.0 + r * (2.0 + r)) * ak * p.p0;
    }
    case CurveKind::kPdgGap:
      if (k == 0) return std::numeric_limits<double>::infinity();
      return 8.0 * p.lip_f / (kd * (kd + 1.0)) * p.p0;
    case CurveKind::kRpdgDistNonuniform:
      return (1.0 + 3.0 * p.lip_f / p.mu) * ak * p.p0;
    case CurveKind::kRpdgDistUniform:
      return (1.0 + p.lip_f / p.mu) * ak * p.p0;
    case CurveKind::kRpdgGap:
      return std::pow(p.alpha, kd / 2.0) / (1.0 - p.alpha) *
             (p.mu + 2.0 * p.lip_f + p.lip_f * p.lip_f / p.mu) * p.p0;
    case CurveKind::kRpdgDistGeneral:
      return (1.0 + p.lip_f * p.alpha / ((1.0 - p.alpha) * p.eta)) * ak * p.p0;
    case CurveKind::kRpdgGapGeneral:
      return std::pow(p.alpha, kd / 2.0) *
             (p.eta / p.alpha + (3.0 - 2.0 * p.alpha) / (1.0 - p.alpha) * p.lip_f +
              2.0 * p.lip_f * p.lip_f * p.alpha / ((1.0 - p.alpha) * p.eta)) *
             p.p0;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown bound curve kind");
}

CurveKind DistCurveFor(const Schedule& schedule) {
  switch (schedule.kind) {
    case ScheduleKind::kPdgStronglyConvex:
      return CurveKind::kPdgDist;
    case ScheduleKind::kRpdgNonuniform:
      return CurveKind::kRpdgDistNonuniform;
    case ScheduleKind::kRpdgUniform:
      return CurveKind::kRpdgDistUniform;
    default:
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("no distance bound for schedule kind {}",
                       ScheduleKindName(schedule.kind)));
  }
}

CurveKind GapCurveFor(const Schedule& schedule) {
  switch (schedule.kind) {
    case ScheduleKind::kPdgStronglyConvex:
      return CurveKind::kPdgGapStronglyConvex;
    case ScheduleKind::kPdgNonStrongly:
      return CurveKind::kPdgGap;
    case ScheduleKind::kRpdgNonuniform:
    case ScheduleKind::kRpdgUniform:
      return CurveKind::kRpdgGap;
    default:
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("no gap bound for schedule kind {}",
                       ScheduleKindName(schedule.kind)));
  }
}

}  // namespace rpdg
