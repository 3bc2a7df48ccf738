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

#include "rpdg/instances.h"

#include <cmath>
#include <memory>

#include "Eigen/Cholesky"
#include "Eigen/Eigenvalues"
#include "Eigen/QR"
#include "fmt/format.h"
#include "rpdg/error.h"
#include "rpdg/sampler.h"

namespace rpdg {

namespace {

class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : seed_(seed) {}
  double Next() { return CounterGaussian(seed_, counter_++); }
  double NextUniform() { return CounterUniform(seed_ ^ 0x5DEECE66DULL, counter_++); }
  Eigen::MatrixXd Matrix(int rows, int cols) {
    Eigen::MatrixXd a(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) a(i, j) = Next();
    }
    return a;
  }
  Eigen::VectorXd Vector(int n) { return Matrix(n, 1).col(0); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

Eigen::MatrixXd RandomOrthogonal(GaussianStream& rng, int n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(rng.Matrix(n, n));
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

double LargestEigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

// log(1 + exp(-z)) without overflow.
double Softplus(double z) {
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

}  // namespace

ProblemInstance MakeLeastSquares(std::vector<Eigen::MatrixXd> ops,
                                 std::vector<Eigen::VectorXd> targets,
                                 double mu, FeasibleSet set, CompositeTerm h,
                                 bool require_opt) {
  Require(!ops.empty() && ops.size() == targets.size(),
          ErrorCode::kInvalidArgument,
          "need matching nonempty operator and target lists");
  const int n = static_cast<int>(ops.front().cols());
  auto data = std::make_shared<
      std::pair<std::vector<Eigen::MatrixXd>, std::vector<Eigen::VectorXd>>>();
  auto quad = std::make_shared<QuadraticForm>();
  quad->hessian = Eigen::MatrixXd::Zero(n, n);
  quad->linear = Eigen::VectorXd::Zero(n);

  ProblemInstance p;
  p.m = static_cast<int>(ops.size());
  p.n = n;
  p.mu = mu;
  p.h = std::move(h);
  p.feasible_set = std::move(set);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Require(ops[i].cols() == n && targets[i].size() == ops[i].rows(),
            ErrorCode::kInvalidArgument,
            fmt::format("component {} has inconsistent shapes", i));
    const Eigen::MatrixXd gram = ops[i].transpose() * ops[i];
    p.lip.push_back(LargestEigenvalue(gram));
    quad->hessian += gram;
    quad->linear += ops[i].transpose() * targets[i];
    quad->constant += 0.5 * targets[i].squaredNorm();
  }
  p.lip_f = std::min(LargestEigenvalue(quad->hessian), p.total_lip());
  data->first = std::move(ops);
  data->second = std::move(targets);
  p.gradient = [data](int i, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    const Eigen::MatrixXd& b = data->first[i];
    out.noalias() = b.transpose() * (b * x - data->second[i]);
  };
  p.objective = [data](int i, const Eigen::VectorXd& x) {
    return 0.5 * (data->first[i] * x - data->second[i]).squaredNorm();
  };

  if (!p.feasible_set.bounded() && p.h.l1_weight == 0.0) {
    const Eigen::MatrixXd system =
        quad->hessian + mu * Eigen::MatrixXd::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(system);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo > 1e-12 * std::max(hi, 1.0)) {
      Eigen::VectorXd rhs = quad->linear;
      if (p.h.linear.size() != 0) rhs -= p.h.linear;
      p.opt_x = system.ldlt().solve(rhs);
    } else {
      Require(!require_opt, ErrorCode::kInvalidArgument,
              "aggregate normal equations are singular (mu = 0 and rank "
              "deficient data)");
    }
  }
  p.quadratic = std::move(quad);
  p.family = "least_squares";
  return p;
}

ProblemInstance MakeRandomQuadratic(const RandomQuadraticOptions& o) {
  Require(o.m >= 1 && o.n >= 1, ErrorCode::kInvalidArgument,
          "m and n must be >= 1");
  Require(o.mu >= 0.0, ErrorCode::kInvalidArgument, "mu must be >= 0");
  Require(o.cond_target >= 1.0, ErrorCode::kInvalidArgument,
          "cond_target must be >= 1");
  Require(o.lip_scale > 0.0, ErrorCode::kInvalidArgument,
          "lip_scale must be > 0");
  GaussianStream rng(o.seed);
  Eigen::VectorXd spectrum(o.n);
  for (int j = 0; j < o.n; ++j) {
    const double frac = o.n == 1 ? 0.0 : static_cast<double>(j) / (o.n - 1);
    spectrum[j] = std::pow(o.cond_target, -frac);
  }
  const Eigen::VectorXd x_true = rng.Vector(o.n);
  Eigen::MatrixXd shared;
  if (o.aligned) shared = RandomOrthogonal(rng, o.n);
  std::vector<Eigen::MatrixXd> ops;
  std::vector<Eigen::VectorXd> targets;
  for (int i = 0; i < o.m; ++i) {
    const Eigen::MatrixXd u = o.aligned ? shared : RandomOrthogonal(rng, o.n);
    const double scale =
        o.equal_lip ? o.lip_scale
                    : o.lip_scale * std::pow(10.0, -rng.NextUniform());
    Eigen::MatrixXd b =
        (scale * spectrum).cwiseSqrt().asDiagonal() * u.transpose();
    Eigen::VectorXd c = o.consistent ? Eigen::VectorXd(b * x_true)
                                     : rng.Vector(o.n);
    ops.push_back(std::move(b));
    targets.push_back(std::move(c));
  }
  ProblemInstance p = MakeLeastSquares(std::move(ops), std::move(targets), o.mu);
  p.family = "random_quadratic";
  return p;
}

ProblemInstance MakeRandomQuadratic(int m, int n, double mu, double cond_target,
                                    std::uint64_t seed) {
  RandomQuadraticOptions o;
  o.m = m;
  o.n = n;
  o.mu = mu;
  o.cond_target = cond_target;
  o.seed = seed;
  return MakeRandomQuadratic(o);
}

std::vector<std::vector<int>> RowGroups(int rows, int groups) {
  Require(groups >= 1 && groups <= rows, ErrorCode::kInvalidArgument,
          fmt::format("cannot split {} rows into {} groups", rows, groups));
  std::vector<std::vector<int>> out(groups);
  for (int g = 0; g < groups; ++g) {
    const int begin = static_cast<int>(static_cast<long>(rows) * g / groups);
    const int end = static_cast<int>(static_cast<long>(rows) * (g + 1) / groups);
    for (int r = begin; r < end; ++r) out[g].push_back(r);
  }
  return out;
}

ProblemInstance MakeLogistic(const DatasetMatrix& data, double mu, int groups) {
  Require(data.rows() >= 1, ErrorCode::kInvalidArgument, "empty dataset");
  Require(mu >= 0.0, ErrorCode::kInvalidArgument, "mu must be >= 0");
  for (int r = 0; r < data.rows(); ++r) {
    Require(data.b[r] == 1.0 || data.b[r] == -1.0, ErrorCode::kInvalidArgument,
            fmt::format("row {}: logistic labels must be -1 or +1, got {}", r,
                        data.b[r]));
  }
  Require(data.a.allFinite(), ErrorCode::kInvalidArgument,
          "dataset has non-finite features");
  const auto split = RowGroups(data.rows(), groups == 0 ? data.rows() : groups);
  struct Block {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
  };
  auto blocks = std::make_shared<std::vector<Block>>();
  ProblemInstance p;
  p.m = static_cast<int>(split.size());
  p.n = data.features();
  p.mu = mu;
  for (const auto& rows : split) {
    Block blk{Eigen::MatrixXd(rows.size(), data.features()),
              Eigen::VectorXd(rows.size())};
    for (std::size_t k = 0; k < rows.size(); ++k) {
      blk.a.row(k) = data.a.row(rows[k]);
      blk.b[k] = data.b[rows[k]];
    }
    p.lip.push_back(rows.size() == 1
                        ? blk.a.row(0).squaredNorm() / 4.0
                        : LargestEigenvalue(blk.a.transpose() * blk.a) / 4.0);
    blocks->push_back(std::move(blk));
  }
  p.lip_f = std::min(LargestEigenvalue(data.a.transpose() * data.a) / 4.0,
                     p.total_lip());
  p.gradient = [blocks](int i, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    const Block& blk = (*blocks)[i];
    const Eigen::VectorXd z = blk.b.cwiseProduct(blk.a * x);
    const Eigen::VectorXd w =
        -blk.b.array() / (1.0 + z.array().exp());
    out.noalias() = blk.a.transpose() * w;
  };
  p.objective = [blocks](int i, const Eigen::VectorXd& x) {
    const Block& blk = (*blocks)[i];
    const Eigen::VectorXd z = blk.b.cwiseProduct(blk.a * x);
    double sum = 0.0;
    for (Eigen::Index r = 0; r < z.size(); ++r) sum += Softplus(z[r]);
    return sum;
  };
  p.family = "logistic";
  return p;
}

NonsmoothProblem MakeAbslossNonsmooth(const DatasetMatrix& data, double mu) {
  Require(data.rows() >= 1, ErrorCode::kInvalidArgument, "empty dataset");
  std::vector<SmoothingComponent> comps;
  comps.reserve(data.rows());
  for (int r = 0; r < data.rows(); ++r) {
    comps.push_back(MakeSmoothingComponent(
        data.a.row(r), Eigen::VectorXd::Constant(1, data.b[r]),
        FeasibleSet::Box(Eigen::VectorXd::Constant(1, -1.0),
                         Eigen::VectorXd::Constant(1, 1.0))));
  }
  NonsmoothProblem problem;
  problem.spec = MakeSmoothingSpec(data.features(), std::move(comps), 1.0);
  problem.mu = mu;
  return problem;
}

}  // namespace rpdg
