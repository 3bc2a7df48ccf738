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

#include "rpdg/worstcase.h"

#include <cmath>
#include <memory>

#include "fmt/format.h"
#include "rpdg/ensemble.h"
#include "rpdg/error.h"

namespace rpdg {

void WorstCaseSpec::Validate() const {
  Require(m >= 1, ErrorCode::kInvalidArgument, "m must be >= 1");
  Require(n_tilde >= 1, ErrorCode::kInvalidArgument, "n_tilde must be >= 1");
  Require(mu > 0.0 && std::isfinite(mu), ErrorCode::kInvalidArgument,
          "mu must be > 0");
  Require(Q > 1.0 && std::isfinite(Q), ErrorCode::kInvalidArgument,
          fmt::format("Q must be > 1 (got {})", Q));
}

double WorstCaseSpec::kappa() const {
  const double r = std::sqrt(Q);
  return (r + 3.0) / (r + 1.0);
}

double WorstCaseSpec::q() const {
  const double r = std::sqrt(Q);
  return (r - 1.0) / (r + 1.0);
}

double WorstCaseSpec::scale() const { return mu * (Q - 1.0) / 4.0; }

void TridiagonalApply(int n_tilde, double kappa, const double* x, double* out) {
  if (n_tilde == 1) {
    out[0] = kappa * x[0];
    return;
  }
  out[0] = 2.0 * x[0] - x[1];
  for (int j = 1; j < n_tilde - 1; ++j) {
    out[j] = 2.0 * x[j] - x[j - 1] - x[j + 1];
  }
  out[n_tilde - 1] = kappa * x[n_tilde - 1] - x[n_tilde - 2];
}

Eigen::MatrixXd WorstCaseMatrix(int n_tilde, double Q) {
  WorstCaseSpec spec;
  spec.n_tilde = n_tilde;
  spec.Q = Q;
  spec.Validate();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_tilde, n_tilde);
  for (int j = 0; j < n_tilde; ++j) {
    a(j, j) = 2.0;
    if (j > 0) a(j, j - 1) = -1.0;
    if (j + 1 < n_tilde) a(j, j + 1) = -1.0;
  }
  a(n_tilde - 1, n_tilde - 1) = spec.kappa();
  return a;
}

ProblemInstance BuildWorstCase(const WorstCaseSpec& spec) {
  spec.Validate();
  const int nt = spec.n_tilde;
  const double kappa = spec.kappa();
  const double scale = spec.scale();

  ProblemInstance p;
  p.m = spec.m;
  p.n = spec.n();
  p.mu = spec.mu;
  p.lip.assign(spec.m, spec.mu * (spec.Q - 1.0));
  p.lip_f = spec.mu * (spec.Q - 1.0);  // blocks are disjoint
  p.family = "worstcase";
  p.gradient = [nt, kappa, scale](int i, const Eigen::VectorXd& x,
                                  Eigen::VectorXd& out) {
    out.setZero(x.size());
    const int off = i * nt;
    TridiagonalApply(nt, kappa, x.data() + off, out.data() + off);
    out.segment(off, nt) *= scale;
    out[off] -= scale;
  };
  p.objective = [nt, kappa, scale](int i, const Eigen::VectorXd& x) {
    Eigen::VectorXd ax(nt);
    const int off = i * nt;
    TridiagonalApply(nt, kappa, x.data() + off, ax.data());
    return scale * (0.5 * ax.dot(x.segment(off, nt)) - x[off]);
  };
  p.opt_x = AnalyticSolution(spec);
  p.quadratic = std::make_shared<QuadraticForm>();
  return p;
}

Eigen::VectorXd AnalyticSolution(const WorstCaseSpec& spec) {
  spec.Validate();
  const double q = spec.q();
  Eigen::VectorXd block(spec.n_tilde);
  double power = 1.0;
  for (int j = 0; j < spec.n_tilde; ++j) {
    power *= q;
    block[j] = power;
  }
  return block.replicate(spec.m, 1);
}

double LowerBoundCurve(int m, double Q, std::int64_t k) {
  Require(Q > 1.0, ErrorCode::kInvalidArgument, "Q must be > 1");
  Require(k >= 0, ErrorCode::kInvalidArgument, "k must be >= 0");
  const double r = std::sqrt(Q);
  const double denom = m * (r + 1.0) * (r + 1.0) - 4.0 * r;
  return 0.5 * std::exp(-4.0 * static_cast<double>(k) * r / denom);
}

double LowerBoundDimension(int m, double Q, std::int64_t k) {
  Require(Q > 1.0, ErrorCode::kInvalidArgument, "Q must be > 1");
  Require(m >= 1, ErrorCode::kInvalidArgument, "m must be >= 1");
  const double r = std::sqrt(Q);
  const double q = (r - 1.0) / (r + 1.0);
  const double log_arg = static_cast<double>(k) * std::log1p(-(1.0 - q * q) / m) -
                         std::log(2.0);
  return m * log_arg / (2.0 * std::log(q));
}

MinDimension MinimumDimension(int m, double Q, std::int64_t k) {
  Require(k >= 1, ErrorCode::kInvalidArgument, "k must be >= 1");
  const double threshold = LowerBoundDimension(m, Q, k);
  MinDimension d;
  d.n_tilde = threshold <= 0.0
                  ? 1
                  : std::max(1, static_cast<int>(std::ceil(threshold / m)));
  d.n = m * d.n_tilde;
  return d;
}

bool SandwichReport::ok() const {
  return lower_violations == 0 && upper_violations == 0 &&
         (!crossing_grad_evals || *crossing_grad_evals <= crossing_budget);
}

std::string SandwichReport::Header() const {
  return fmt::format(
      "bound sandwich: m={} n_tilde={} Q={} mu={} schedule={} seeds={} "
      "k_max={}; only this sampling distribution is exercised, the lower bound "
      "is claimed for every distribution",
      spec.m, spec.n_tilde, spec.Q, spec.mu, ScheduleKindName(kind), seeds,
      k_max);
}

SandwichReport RunBoundSandwich(const WorstCaseSpec& spec, ScheduleKind kind,
                                const std::vector<std::uint64_t>& seeds,
                                std::int64_t k_max, int threads) {
  spec.Validate();
  Require(k_max >= 1, ErrorCode::kInvalidArgument, "k_max must be >= 1");
  const MinDimension need = MinimumDimension(spec.m, spec.Q, k_max);
  Require(spec.n_tilde >= need.n_tilde, ErrorCode::kDimensionTooSmall,
          fmt::format("n_tilde = {} is below the lower-bound dimension "
                      "threshold {} for k_max = {} (n >= {:.4g})",
                      spec.n_tilde, need.n_tilde, k_max,
                      LowerBoundDimension(spec.m, spec.Q, k_max)));

  const ProblemInstance problem = BuildWorstCase(spec);
  Schedule schedule;
  Sampling sampling = Sampling::kNonuniform;
  switch (kind) {
    case ScheduleKind::kRpdgNonuniform:
      schedule = RpdgNonuniform(problem.lip, problem.mu);
      break;
    case ScheduleKind::kRpdgUniform:
      schedule = RpdgUniform(problem.lip, problem.mu);
      sampling = Sampling::kUniform;
      break;
    default:
      Fail(ErrorCode::kInvalidSchedule,
           "the bound sandwich runs rpdg_nonuniform or rpdg_uniform");
  }

  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(problem.n);
  const double p0 = PrimalProxDistance(x0, *problem.opt_x);
  EnsembleOptions options;
  options.k_max = k_max;
  options.seeds = seeds;
  options.threads = threads;
  const EnsembleStats stats = RunRpdgEnsemble(problem, schedule, x0, options);

  SandwichReport report;
  report.spec = spec;
  report.kind = kind;
  report.seeds = static_cast<int>(seeds.size());
  report.k_max = k_max;
  const CurveKind curve = DistCurveFor(schedule);
  const CurveParams cp{problem.mu, problem.lip_f, schedule.contraction,
                       schedule.eta, 1.0};
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    const double mean = stats.dist.mean[idx] / p0;
    const double se = stats.dist.std_error[idx] / p0;
    const double lo = LowerBoundCurve(spec.m, spec.Q, k);
    const double up = TheoreticalUpperCurve(curve, cp, k);
    report.lower.push_back(lo);
    report.mean_ratio.push_back(mean);
    report.se_ratio.push_back(se);
    report.upper.push_back(up);
    if (mean + 3.0 * se < lo) {
      ++report.lower_violations;
      if (!report.first_lower_violation) report.first_lower_violation = k;
    }
    if (mean - 3.0 * se > up) {
      ++report.upper_violations;
      if (!report.first_upper_violation) report.first_upper_violation = k;
    }
    if (!report.crossing_grad_evals && mean <= kCrossingLevel) {
      report.crossing_grad_evals = spec.m + k;
    }
  }

  IterationBoundInput in;
  in.target = BoundTarget::kDist;
  in.sampling = sampling;
  in.m = spec.m;
  in.cond_const = schedule.cond_const;
  in.lip_f = problem.lip_f;
  in.mu = problem.mu;
  in.p0 = 1.0;
  in.eps = kCrossingLevel;
  report.crossing_budget = IterationBound(in) + spec.m;
  return report;
}

}  // namespace rpdg
