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

#include "rpdg/smoothing.h"

#include <cmath>

#include "Eigen/Eigenvalues"
#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

namespace {

double LargestEigenvalue(const Eigen::MatrixXd& sym) {
  if (sym.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

double OperatorNormSq(const Eigen::MatrixXd& op) {
  if (op.rows() == 1) return op.row(0).squaredNorm();
  return op.rows() <= op.cols() ? LargestEigenvalue(op * op.transpose())
                                : LargestEigenvalue(op.transpose() * op);
}

}  // namespace

SmoothingComponent MakeSmoothingComponent(Eigen::MatrixXd op,
                                          Eigen::VectorXd offset,
                                          FeasibleSet dual_set) {
  Require(dual_set.kind == SetKind::kBox || dual_set.kind == SetKind::kBall,
          ErrorCode::kUnsupported,
          "smoothing needs a box or ball dual set");
  const Eigen::Index dim = dual_set.kind == SetKind::kBox
                               ? dual_set.lower.size()
                               : dual_set.center.size();
  Require(op.rows() == dim && offset.size() == dim, ErrorCode::kInvalidArgument,
          "operator, offset and dual set dimensions disagree");
  SmoothingComponent c;
  c.prox_center = dual_set.Project(Eigen::VectorXd::Zero(dim));
  c.op_norm_sq = OperatorNormSq(op);
  c.omega_sq = dual_set.MaxProxDistance(c.prox_center);
  c.op = std::move(op);
  c.offset = std::move(offset);
  c.dual_set = std::move(dual_set);
  return c;
}

SmoothingSpec MakeSmoothingSpec(int n, std::vector<SmoothingComponent> components,
                                double delta) {
  Require(!components.empty(), ErrorCode::kInvalidArgument,
          "smoothing spec needs components");
  for (const auto& c : components) {
    Require(c.op.cols() == n, ErrorCode::kInvalidArgument,
            "component operator has wrong width");
  }
  SmoothingSpec spec;
  spec.n = n;
  spec.components = std::move(components);
  for (const auto& c : spec.components) spec.omega_y_sq += c.omega_sq;
  return WithDelta(std::move(spec), delta);
}

SmoothingSpec WithDelta(SmoothingSpec spec, double delta) {
  Require(delta > 0.0 && std::isfinite(delta), ErrorCode::kInvalidArgument,
          "smoothing parameter delta must be finite and > 0");
  spec.delta = delta;
  spec.lip_tilde.resize(spec.components.size());
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    spec.lip_tilde[i] = spec.components[i].op_norm_sq / delta;
  }
  return spec;
}

ValueGradient SmoothComponentValueGrad(const SmoothingSpec& spec, int i,
                                       const Eigen::VectorXd& x) {
  const SmoothingComponent& c = spec.components[i];
  const Eigen::VectorXd r = c.op * x - c.offset;
  const Eigen::VectorXd y = c.dual_set.Project(c.prox_center + r / spec.delta);
  ValueGradient out;
  out.value = r.dot(y) - 0.5 * spec.delta * (y - c.prox_center).squaredNorm();
  out.gradient = c.op.transpose() * y;
  return out;
}

double ExactComponentValue(const SmoothingSpec& spec, int i,
                           const Eigen::VectorXd& x) {
  const SmoothingComponent& c = spec.components[i];
  const Eigen::VectorXd r = c.op * x - c.offset;
  if (c.dual_set.kind == SetKind::kBall) {
    return r.dot(c.dual_set.center) + c.dual_set.radius * r.norm();
  }
  return (r.array() * c.dual_set.lower.array())
      .max(r.array() * c.dual_set.upper.array())
      .sum();
}

double NonsmoothObjective(const NonsmoothProblem& problem,
                          const Eigen::VectorXd& x) {
  double value = problem.h.Value(x) + 0.5 * problem.mu * x.squaredNorm();
  for (int i = 0; i < problem.spec.m(); ++i) {
    value += ExactComponentValue(problem.spec, i, x);
  }
  return value;
}

ProblemInstance SmoothedInstance(const NonsmoothProblem& problem, double delta) {
  auto spec = std::make_shared<const SmoothingSpec>(WithDelta(problem.spec, delta));
  ProblemInstance p;
  p.m = spec->m();
  p.n = spec->n;
  p.mu = problem.mu;
  p.h = problem.h;
  p.feasible_set = problem.feasible_set;
  p.lip = spec->lip_tilde;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(spec->n, spec->n);
  for (const auto& c : spec->components) gram += c.op.transpose() * c.op;
  p.lip_f = LargestEigenvalue(gram) / delta;
  // Guard against eigen-solver rounding above the sum of the component norms.
  p.lip_f = std::min(p.lip_f, p.total_lip());
  p.family = "smoothed";
  p.gradient = [spec](int i, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    out = SmoothComponentValueGrad(*spec, i, x).gradient;
  };
  p.objective = [spec](int i, const Eigen::VectorXd& x) {
    return SmoothComponentValueGrad(*spec, i, x).value;
  };
  return p;
}

}  // namespace rpdg
