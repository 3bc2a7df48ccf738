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

#include "rpdg/problem.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

FeasibleSet FeasibleSet::AllSpace() { return {}; }

FeasibleSet FeasibleSet::Box(Eigen::VectorXd lower, Eigen::VectorXd upper) {
  Require(lower.size() == upper.size(), ErrorCode::kInvalidArgument,
          "box bounds have different dimensions");
  Require((lower.array() <= upper.array()).all(), ErrorCode::kInvalidArgument,
          "box lower bound exceeds upper bound");
  Require(lower.allFinite() && upper.allFinite(), ErrorCode::kInvalidArgument,
          "box bounds must be finite");
  FeasibleSet set;
  set.kind = SetKind::kBox;
  set.lower = std::move(lower);
  set.upper = std::move(upper);
  return set;
}

FeasibleSet FeasibleSet::Ball(Eigen::VectorXd center, double radius) {
  Require(radius >= 0.0 && std::isfinite(radius), ErrorCode::kInvalidArgument,
          "ball radius must be finite and nonnegative");
  FeasibleSet set;
  set.kind = SetKind::kBall;
  set.center = std::move(center);
  set.radius = radius;
  return set;
}

bool FeasibleSet::Contains(const Eigen::VectorXd& x, double tol) const {
  switch (kind) {
    case SetKind::kAllSpace:
      return true;
    case SetKind::kBox:
      return ((x.array() >= lower.array() - tol) &&
              (x.array() <= upper.array() + tol))
          .all();
    case SetKind::kBall:
      return (x - center).norm() <= radius + tol;
  }
  return false;
}

Eigen::VectorXd FeasibleSet::Project(const Eigen::VectorXd& z) const {
  switch (kind) {
    case SetKind::kAllSpace:
      return z;
    case SetKind::kBox:
      return z.cwiseMax(lower).cwiseMin(upper);
    case SetKind::kBall: {
      const Eigen::VectorXd d = z - center;
      const double norm = d.norm();
      if (norm <= radius) return z;
      return center + (radius / norm) * d;
    }
  }
  return z;
}

double FeasibleSet::MaxProxDistance(const Eigen::VectorXd& x0) const {
  switch (kind) {
    case SetKind::kAllSpace:
      Fail(ErrorCode::kInvalidArgument,
           "max prox-distance is unbounded on an unbounded feasible set");
    case SetKind::kBox: {
      const Eigen::ArrayXd lo = (lower - x0).array().square();
      const Eigen::ArrayXd hi = (upper - x0).array().square();
      return 0.5 * lo.max(hi).sum();
    }
    case SetKind::kBall: {
      const double r = (x0 - center).norm() + radius;
      return 0.5 * r * r;
    }
  }
  return 0.0;
}

std::string FeasibleSet::Describe() const {
  switch (kind) {
    case SetKind::kAllSpace:
      return "all-space";
    case SetKind::kBox:
      return fmt::format("box(n={})", lower.size());
    case SetKind::kBall:
      return fmt::format("ball(n={}, r={})", center.size(), radius);
  }
  return "?";
}

CompositeTerm CompositeTerm::Linear(Eigen::VectorXd c) {
  CompositeTerm h;
  h.linear = std::move(c);
  return h;
}

CompositeTerm CompositeTerm::L1(double weight) {
  Require(weight >= 0.0, ErrorCode::kInvalidArgument,
          "l1 weight must be nonnegative");
  CompositeTerm h;
  h.l1_weight = weight;
  return h;
}

double CompositeTerm::Value(const Eigen::VectorXd& x) const {
  double value = 0.0;
  if (l1_weight != 0.0) value += l1_weight * x.lpNorm<1>();
  if (linear.size() != 0) value += linear.dot(x);
  return value;
}

CompositeTerm CompositeTerm::PlusLinear(const Eigen::VectorXd& c) const {
  CompositeTerm out = *this;
  if (out.linear.size() == 0) {
    out.linear = c;
  } else {
    out.linear += c;
  }
  return out;
}

std::string CompositeTerm::Describe() const {
  if (is_zero()) return "zero";
  std::string s;
  if (l1_weight != 0.0) s += fmt::format("l1({})", l1_weight);
  if (linear.size() != 0) s += s.empty() ? "linear" : "+linear";
  return s;
}

double ProblemInstance::total_lip() const {
  double sum = 0.0;
  for (double l : lip) sum += l;
  return sum;
}

void ProblemInstance::Validate() const {
  Require(m >= 1, ErrorCode::kInvalidArgument, "m must be positive");
  Require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  Require(static_cast<bool>(gradient), ErrorCode::kInvalidArgument,
          "gradient oracle missing");
  Require(static_cast<int>(lip.size()) == m, ErrorCode::kInvalidArgument,
          fmt::format("lip has {} entries, expected {}", lip.size(), m));
  for (double l : lip) {
    Require(l >= 0.0 && std::isfinite(l), ErrorCode::kInvalidArgument,
            "component Lipschitz constants must be finite and nonnegative");
  }
  Require(lip_f >= 0.0, ErrorCode::kInvalidArgument, "lip_f must be >= 0");
  Require(lip_f <= total_lip() * (1.0 + 1e-12), ErrorCode::kInvalidArgument,
          fmt::format("lip_f = {} exceeds sum of component constants {}",
                      lip_f, total_lip()));
  Require(mu >= 0.0 && std::isfinite(mu), ErrorCode::kInvalidArgument,
          "mu must be finite and >= 0");
  Require(h.linear.size() == 0 || h.linear.size() == n,
          ErrorCode::kInvalidArgument, "linear term has wrong dimension");
  if (feasible_set.kind == SetKind::kBox) {
    Require(feasible_set.lower.size() == n, ErrorCode::kInvalidArgument,
            "box has wrong dimension");
  } else if (feasible_set.kind == SetKind::kBall) {
    Require(feasible_set.center.size() == n, ErrorCode::kInvalidArgument,
            "ball has wrong dimension");
  }
  if (opt_x) {
    Require(opt_x->size() == n, ErrorCode::kInvalidArgument,
            "opt_x has wrong dimension");
  }
}

namespace {

void CheckSameSize(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   const char* what) {
  Require(a.size() == b.size(), ErrorCode::kInvalidArgument,
          fmt::format("{}: dimension mismatch ({} vs {})", what, a.size(),
                      b.size()));
}

}  // namespace

void PrimalProxMapInto(const ProblemInstance& problem, const Eigen::VectorXd& g,
                       const Eigen::VectorXd& x0, double eta,
                       Eigen::VectorXd& out) {
  Require(eta > 0.0, ErrorCode::kInvalidArgument, "prox weight eta must be > 0");
  const double denom = problem.mu + eta;
  // Stationarity of the separable quadratic gives
  // (mu+eta) x = eta x0 - g - c - l1*s. It is evaluated as a correction to x0
  // so that iterates near a fixed point move by their residual rather than
  // being rebuilt from rounded products.
  Eigen::VectorXd residual = g + problem.mu * x0;
  if (problem.h.linear.size() != 0) residual += problem.h.linear;
  out = x0 - residual / denom;
  if (problem.h.l1_weight != 0.0) {
    if (problem.feasible_set.kind == SetKind::kBall) {
      Fail(ErrorCode::kNoClosedFormProx,
           "l1 composite term on a Euclidean ball");
    }
    const double t = problem.h.l1_weight / denom;
    out = out.array().sign() * (out.array().abs() - t).max(0.0);
  }
  switch (problem.feasible_set.kind) {
    case SetKind::kAllSpace:
      break;
    case SetKind::kBox:
      // Separable objective: clipping the unconstrained minimizer is exact.
      out = out.cwiseMax(problem.feasible_set.lower)
                .cwiseMin(problem.feasible_set.upper);
      break;
    case SetKind::kBall:
      // Isotropic quadratic: projecting the unconstrained minimizer is exact.
      out = problem.feasible_set.Project(out);
      break;
  }
}

Eigen::VectorXd PrimalProxMap(const ProblemInstance& problem,
                              const Eigen::VectorXd& g,
                              const Eigen::VectorXd& x0, double eta) {
  CheckSameSize(g, x0, "prox map");
  Require(g.size() == problem.n, ErrorCode::kInvalidArgument,
          "prox map input has wrong dimension");
  Require(g.allFinite() && x0.allFinite(), ErrorCode::kInvalidArgument,
          "prox map inputs must be finite");
  Eigen::VectorXd out;
  PrimalProxMapInto(problem, g, x0, eta, out);
  return out;
}

double PrimalProxDistance(const Eigen::VectorXd& x0, const Eigen::VectorXd& x) {
  CheckSameSize(x0, x, "prox distance");
  return 0.5 * (x - x0).squaredNorm();
}

void DualAverageInto(const Eigen::VectorXd& x_tilde, double tau,
                     Eigen::VectorXd& x_under) {
  x_under += (x_tilde - x_under) / (1.0 + tau);
}

void DualAscentStepInPlace(const ProblemInstance& problem, int i,
                           const Eigen::VectorXd& x_tilde, double tau,
                           DualBlockState& block) {
  DualAverageInto(x_tilde, tau, block.x_under);
  problem.gradient(i, block.x_under, block.y);
}

DualBlockState DualAscentStep(const ProblemInstance& problem, int i,
                              const Eigen::VectorXd& x_tilde,
                              const DualBlockState& block, double tau) {
  Require(tau >= 0.0, ErrorCode::kInvalidArgument,
          "dual step weight tau must be >= 0");
  Require(i >= 0 && i < problem.m, ErrorCode::kInvalidArgument,
          "component index out of range");
  CheckSameSize(x_tilde, block.x_under, "dual ascent step");
  DualBlockState next = block;
  next.y.resize(problem.n);
  DualAscentStepInPlace(problem, i, x_tilde, tau, next);
  return next;
}

double SmoothValue(const ProblemInstance& problem, const Eigen::VectorXd& x) {
  Require(problem.has_objective(), ErrorCode::kObjectiveUnavailable,
          "instance has no component value oracle");
  double sum = 0.0;
  for (int i = 0; i < problem.m; ++i) sum += problem.objective(i, x);
  return sum;
}

double ObjectiveValue(const ProblemInstance& problem, const Eigen::VectorXd& x) {
  return SmoothValue(problem, x) + problem.h.Value(x) +
         0.5 * problem.mu * x.squaredNorm();
}

Eigen::VectorXd FullGradient(const ProblemInstance& problem,
                             const Eigen::VectorXd& x) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(problem.n);
  Eigen::VectorXd gi(problem.n);
  for (int i = 0; i < problem.m; ++i) {
    problem.gradient(i, x, gi);
    sum += gi;
  }
  return sum;
}

Eigen::VectorXd MinNormSubgradient(const ProblemInstance& problem,
                                   const Eigen::VectorXd& x) {
  Eigen::VectorXd s = FullGradient(problem, x) + problem.mu * x;
  if (problem.h.linear.size() != 0) s += problem.h.linear;
  const double w = problem.h.l1_weight;
  if (w != 0.0) {
    for (int j = 0; j < s.size(); ++j) {
      if (x[j] > 0.0) {
        s[j] += w;
      } else if (x[j] < 0.0) {
        s[j] -= w;
      } else {
        // Choose the element of [s-w, s+w] closest to zero.
        s[j] = std::copysign(std::max(std::abs(s[j]) - w, 0.0), s[j]);
      }
    }
  }
  return s;
}

double InitialDistanceBound(const ProblemInstance& problem,
                            const Eigen::VectorXd& x0) {
  if (problem.feasible_set.bounded()) {
    return problem.feasible_set.MaxProxDistance(x0);
  }
  Require(problem.mu > 0.0, ErrorCode::kInvalidArgument,
          "no bound on P(x0, x*) for mu = 0 on an unbounded set");
  const double r = MinNormSubgradient(problem, x0).norm() / problem.mu;
  return 0.5 * r * r;
}

namespace {

Eigen::VectorXd RandomPoint(std::mt19937_64& rng, const Eigen::VectorXd& center,
                            double radius) {
  std::normal_distribution<double> normal(0.0, radius);
  Eigen::VectorXd x = center;
  for (int j = 0; j < x.size(); ++j) x[j] += normal(rng);
  return x;
}

}  // namespace

OracleCheck CheckLipschitz(const ProblemInstance& problem, int i,
                           const Eigen::VectorXd& center, double radius,
                           int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OracleCheck check;
  Eigen::VectorXd g1(problem.n), g2(problem.n);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x1 = RandomPoint(rng, center, radius);
    const Eigen::VectorXd x2 = RandomPoint(rng, center, radius);
    problem.gradient(i, x1, g1);
    problem.gradient(i, x2, g2);
    const double num = (g1 - g2).norm();
    const double den = problem.lip[i] * (x1 - x2).norm();
    const double ratio = den > 0.0 ? num / den : (num > 0.0 ? INFINITY : 0.0);
    check.worst = std::max(check.worst, ratio);
    ++check.samples;
  }
  return check;
}

OracleCheck CheckGradientFiniteDifference(const ProblemInstance& problem, int i,
                                          const Eigen::VectorXd& center,
                                          double radius, int samples,
                                          std::uint64_t seed) {
  Require(problem.has_objective(), ErrorCode::kObjectiveUnavailable,
          "finite-difference check needs a value oracle");
  std::mt19937_64 rng(seed);
  OracleCheck check;
  Eigen::VectorXd g(problem.n), fd(problem.n);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x = RandomPoint(rng, center, radius);
    problem.gradient(i, x, g);
    for (int j = 0; j < problem.n; ++j) {
      const double step = 1e-5 * std::max(1.0, std::abs(x[j]));
      const double saved = x[j];
      x[j] = saved + step;
      const double fp = problem.objective(i, x);
      x[j] = saved - step;
      const double fm = problem.objective(i, x);
      x[j] = saved;
      fd[j] = (fp - fm) / (2.0 * step);
    }
    const double err = (g - fd).norm() / std::max(1.0, g.norm());
    check.worst = std::max(check.worst, err);
    ++check.samples;
  }
  return check;
}

std::optional<double> MinimizeLinearModel(const ProblemInstance& problem,
                                          const Eigen::VectorXd& g) {
  const FeasibleSet& set = problem.feasible_set;
  if (!set.bounded()) return std::nullopt;
  const double w = problem.h.l1_weight;
  if (set.kind == SetKind::kBall && w != 0.0) return std::nullopt;
  Eigen::VectorXd a = g;
  if (problem.h.linear.size() != 0) a += problem.h.linear;
  const double mu = problem.mu;
  auto value = [&](const Eigen::VectorXd& x) {
    return a.dot(x) + w * x.lpNorm<1>() + 0.5 * mu * x.squaredNorm();
  };
  if (mu > 0.0) {
    Eigen::VectorXd z = -a / mu;
    if (w != 0.0) {
      z = z.array().sign() * (z.array().abs() - w / mu).max(0.0);
    }
    return value(set.Project(z));
  }
  if (set.kind == SetKind::kBall) {
    const double norm = a.norm();
    if (norm == 0.0) return 0.0;
    return a.dot(set.center) - set.radius * norm;
  }
  double total = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const double lo = set.lower[j];
    const double hi = set.upper[j];
    double best = std::min(a[j] * lo + w * std::abs(lo),
                           a[j] * hi + w * std::abs(hi));
    if (lo < 0.0 && hi > 0.0) best = std::min(best, 0.0);
    total += best;
  }
  return total;
}

std::optional<double> LinearizationGap(const ProblemInstance& problem,
                                       const Eigen::VectorXd& x) {
  if (!problem.has_objective()) return std::nullopt;
  const Eigen::VectorXd g = FullGradient(problem, x);
  const std::optional<double> inner = MinimizeLinearModel(problem, g);
  if (!inner) return std::nullopt;
  return ObjectiveValue(problem, x) - SmoothValue(problem, x) + g.dot(x) - *inner;
}

}  // namespace rpdg
