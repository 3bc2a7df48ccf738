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

#ifndef RPDG_PROBLEM_H_
#define RPDG_PROBLEM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "Eigen/Core"

namespace rpdg {

// Finite-sum composite problem
//
//   min_{x in X}  Psi(x) = sum_i f_i(x) + h(x) + mu * omega(x)
//
// with smooth convex components f_i (gradient Lipschitz constants lip[i]),
// a simple term h, and omega(x) = 0.5 * ||x||_2^2. The prox-function built on
// omega is P(x0, x) = 0.5 * ||x - x0||_2^2.

// Only the Euclidean distance-generating function ships. The field exists so
// that instances state their prox setup explicitly.
enum class ProxSetup { kEuclidean };

enum class SetKind { kAllSpace, kBox, kBall };

struct FeasibleSet {
  SetKind kind = SetKind::kAllSpace;
  Eigen::VectorXd lower;  // box
  Eigen::VectorXd upper;  // box
  Eigen::VectorXd center;  // ball
  double radius = 0.0;     // ball

  static FeasibleSet AllSpace();
  static FeasibleSet Box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  static FeasibleSet Ball(Eigen::VectorXd center, double radius);

  bool bounded() const { return kind != SetKind::kAllSpace; }
  bool Contains(const Eigen::VectorXd& x, double tol = 1e-12) const;
  Eigen::VectorXd Project(const Eigen::VectorXd& z) const;
  // max_{x in X} P(x0, x); only defined for bounded sets.
  double MaxProxDistance(const Eigen::VectorXd& x0) const;
  std::string Describe() const;
};

// h(x) = l1_weight * ||x||_1 + <linear, x>. An empty `linear` means no linear
// part. This covers h = 0, linear h, lasso-type h, and the shifted terms
// produced by the perturbation wrapper.
struct CompositeTerm {
  double l1_weight = 0.0;
  Eigen::VectorXd linear;

  static CompositeTerm Zero() { return {}; }
  static CompositeTerm Linear(Eigen::VectorXd c);
  static CompositeTerm L1(double weight);

  bool is_zero() const { return l1_weight == 0.0 && linear.size() == 0; }
  double Value(const Eigen::VectorXd& x) const;
  // Returns a copy with `c` added to the linear part.
  CompositeTerm PlusLinear(const Eigen::VectorXd& c) const;
  std::string Describe() const;
};

// Aggregate quadratic f(x) = 0.5 x'Hx - b'x + c0. Instances that are exactly
// quadratic attach one so that conjugates (and hence primal-dual gaps) are
// available in closed form. Structured instances may leave the matrices empty;
// the attachment then only certifies that f is quadratic.
struct QuadraticForm {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd linear;  // b
  double constant = 0.0;   // c0
};

// Writes grad f_i(x) into `out` (already sized n by the caller).
using GradientOracle =
    std::function<void(int i, const Eigen::VectorXd& x, Eigen::VectorXd& out)>;
using ValueOracle = std::function<double(int i, const Eigen::VectorXd& x)>;

// Immutable after construction. Oracles must be pure functions of (i, x);
// solver memory lives in solver state objects, never here.
struct ProblemInstance {
  int m = 0;
  int n = 0;
  GradientOracle gradient;
  std::vector<double> lip;
  double lip_f = 0.0;
  double mu = 0.0;
  CompositeTerm h;
  ProxSetup prox_setup = ProxSetup::kEuclidean;
  FeasibleSet feasible_set;
  ValueOracle objective;  // optional
  std::optional<Eigen::VectorXd> opt_x;
  std::shared_ptr<const QuadraticForm> quadratic;  // optional
  std::string family;

  double total_lip() const;  // L = sum_i lip[i]
  bool has_objective() const { return static_cast<bool>(objective); }
  // Throws kInvalidArgument on inconsistent fields (sizes, negative
  // constants, lip_f > L, ...).
  void Validate() const;
};

// Dual memory for one component: x_under is the point at which the component
// gradient y is current (y = grad f_i(x_under)).
struct DualBlockState {
  Eigen::VectorXd x_under;
  Eigen::VectorXd y;
};

// argmin_{x in X} <g,x> + h(x) + mu*omega(x) + eta*P(x0,x), in closed form.
// Throws kNoClosedFormProx for combinations without one (l1 on a ball).
Eigen::VectorXd PrimalProxMap(const ProblemInstance& problem,
                              const Eigen::VectorXd& g,
                              const Eigen::VectorXd& x0, double eta);
void PrimalProxMapInto(const ProblemInstance& problem, const Eigen::VectorXd& g,
                       const Eigen::VectorXd& x0, double eta,
                       Eigen::VectorXd& out);

// P(x0, x) = omega(x) - omega(x0) - <omega'(x0), x - x0>.
double PrimalProxDistance(const Eigen::VectorXd& x0, const Eigen::VectorXd& x);

// Dual prox-step on component i realized as a gradient evaluation:
//   x_under' = (x_tilde + tau * x_under) / (1 + tau),  y' = grad f_i(x_under').
DualBlockState DualAscentStep(const ProblemInstance& problem, int i,
                              const Eigen::VectorXd& x_tilde,
                              const DualBlockState& block, double tau);
// In-place variant used by the solvers; `block` is updated.
void DualAscentStepInPlace(const ProblemInstance& problem, int i,
                           const Eigen::VectorXd& x_tilde, double tau,
                           DualBlockState& block);
// The convex combination (x_tilde + tau * x_under) / (1 + tau), written so that
// tau -> infinity leaves x_under untouched to full precision.
void DualAverageInto(const Eigen::VectorXd& x_tilde, double tau,
                     Eigen::VectorXd& x_under);

// Psi(x). Throws kObjectiveUnavailable when the instance has no value oracle.
double ObjectiveValue(const ProblemInstance& problem, const Eigen::VectorXd& x);
// sum_i f_i(x) only.
double SmoothValue(const ProblemInstance& problem, const Eigen::VectorXd& x);
// grad f(x) = sum_i grad f_i(x).
Eigen::VectorXd FullGradient(const ProblemInstance& problem,
                             const Eigen::VectorXd& x);

// Minimum-norm element of grad f(x) + dh(x) + mu*x (+ normal cone is ignored;
// only meaningful for X = R^n).
Eigen::VectorXd MinNormSubgradient(const ProblemInstance& problem,
                                   const Eigen::VectorXd& x);

// Upper bound on P(x0, x*): Omega_X^2 for bounded X, otherwise the strong
// convexity bound 0.5*(||s||/mu)^2 with s the minimum-norm subgradient at x0.
double InitialDistanceBound(const ProblemInstance& problem,
                            const Eigen::VectorXd& x0);

// min_{x in X} <g + c, x> + l1 ||x||_1 + mu/2 ||x||^2, where c is the linear
// part of h; nullopt for unbounded X or l1 on a ball.
std::optional<double> MinimizeLinearModel(const ProblemInstance& problem,
                                          const Eigen::VectorXd& g);
// Psi(x) minus the minimum over X of the linearization of f at x plus h and
// the mu term: an upper bound on Psi(x) - Psi*. nullopt when either part is
// unavailable.
std::optional<double> LinearizationGap(const ProblemInstance& problem,
                                       const Eigen::VectorXd& x);

// Sampled diagnostics. Both draw `samples` random points from a normal
// distribution with scale `radius` around `center`.
struct OracleCheck {
  double worst = 0.0;  // worst observed ratio / error
  int samples = 0;
};
// max ||grad_i(x1) - grad_i(x2)|| / (lip[i] ||x1 - x2||); <= 1 means consistent.
OracleCheck CheckLipschitz(const ProblemInstance& problem, int i,
                           const Eigen::VectorXd& center, double radius,
                           int samples, std::uint64_t seed);
// max relative error between grad_i and central differences of objective_i.
OracleCheck CheckGradientFiniteDifference(const ProblemInstance& problem, int i,
                                          const Eigen::VectorXd& center,
                                          double radius, int samples,
                                          std::uint64_t seed);

}  // namespace rpdg

#endif  // RPDG_PROBLEM_H_
