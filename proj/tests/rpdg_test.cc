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


#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "rpdg/ensemble.h"
#include "rpdg/error.h"
#include "rpdg/pdg.h"
#include "rpdg/rpdg.h"
#include "rpdg/sampler.h"
#include "rpdg/schedule.h"
#include "test_util.h"

namespace rpdg {
namespace {

using ::rpdg::testing::Gen;
using Vec = Eigen::VectorXd;

TEST(Sampler, SingleComponentAlwaysZero) {
  const Sampler sampler({1.0}, 5);
  for (int t = 1; t <= 1000; ++t) EXPECT_EQ(sampler.SampleIndex(t), 0);
}

double FrequencyOfFirst(const Sampler& sampler, int draws) {
  int hits = 0;
  for (int t = 1; t <= draws; ++t) hits += sampler.SampleIndex(t) == 0;
  return static_cast<double>(hits) / draws;
}

TEST(Sampler, FairCoinWithinBinomialBand) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    EXPECT_NEAR(FrequencyOfFirst(Sampler({0.5, 0.5}, seed), 100000), 0.5, 0.01);
  }
}

TEST(Sampler, NonuniformFrequenciesWithinThreeSigma) {
  const int draws = 100000;
  const double p = 0.625;
  const double sigma = std::sqrt(p * (1 - p) / draws);
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    EXPECT_NEAR(FrequencyOfFirst(Sampler({0.625, 0.375}, seed), draws), p,
                3 * sigma);
  }
}

TEST(Sampler, DeterministicAndSeedSensitive) {
  const Sampler a({0.2, 0.3, 0.5}, 42);
  const Sampler b({0.2, 0.3, 0.5}, 42);
  const Sampler c({0.2, 0.3, 0.5}, 43);
  int differ = 0;
  for (int t = 1; t <= 1000; ++t) {
    ASSERT_EQ(a.SampleIndex(t), b.SampleIndex(t));
    differ += a.SampleIndex(t) != c.SampleIndex(t);
  }
  EXPECT_GT(differ, 100);
}

TEST(Sampler, BoundaryTiesGoToLowerIndex) {
  const Sampler sampler({0.25, 0.25, 0.5}, 0);
  EXPECT_EQ(sampler.IndexFor(0.0), 0);
  EXPECT_EQ(sampler.IndexFor(0.25), 0);
  EXPECT_EQ(sampler.IndexFor(std::nextafter(0.25, 1.0)), 1);
  EXPECT_EQ(sampler.IndexFor(0.5), 1);
  EXPECT_EQ(sampler.IndexFor(0.999999), 2);
}

TEST(Sampler, ZeroProbabilityNeverDrawn) {
  const Sampler sampler({0.5, 0.0, 0.5}, 8);
  for (int t = 1; t <= 10000; ++t) EXPECT_NE(sampler.SampleIndex(t), 1);
}

TEST(Sampler, RejectsBadDistributions) {
  EXPECT_THROW(Sampler({0.5, 0.4}, 1), Error);
  EXPECT_THROW(Sampler({1.5, -0.5}, 1), Error);
  EXPECT_THROW(Sampler({}, 1), Error);
}

TEST(RpdgStep, SingleComponentMatchesPdgStep) {
  Gen gen(41);
  for (int trial = 0; trial < 5; ++trial) {
    ProblemInstance p = testing::RandomSpdInstance(gen, 1, 6, 0.5);
    const Vec x0 = gen.Vector(6);
    const Schedule s = RpdgNonuniform(p.lip, p.mu);
    PdgState pdg = PdgInit(p, x0);
    RpdgState rpdg = RpdgInit(p, x0);
    for (int t = 1; t <= 200; ++t) {
      PdgStep(p, s.At(t), pdg);
      RpdgStep(p, s.At(t), 0, 1.0, rpdg);
      ASSERT_LE(testing::SupNorm(pdg.x_prev, rpdg.x_prev), 1e-12) << "t=" << t;
    }
  }
}

TEST(RpdgStep, FixedPointIsStationary) {
  Gen gen(42);
  ProblemInstance p = testing::RandomSpdInstance(gen, 3, 4, 0.5);
  const Schedule s = RpdgUniform(p.lip, p.mu);
  RpdgState state = RpdgInit(p, *p.opt_x);
  const Sampler sampler(s.probs, 1);
  for (int t = 1; t <= 30; ++t) {
    const int i = sampler.SampleIndex(t);
    RpdgStep(p, s.At(t), i, s.probs[i], state);
    ASSERT_LE(testing::SupNorm(state.x_prev, *p.opt_x), 1e-12);
    for (int j = 0; j < p.m; ++j) {
      Vec grad(4);
      p.gradient(j, *p.opt_x, grad);
      ASSERT_LE(testing::SupNorm(state.blocks[j].y, grad), 1e-12);
    }
  }
}

// f1 = x^2/2, f2 = x^2, mu = 1, omega = x^2/2, X = R, h = 0, x0 = 1.
// Each step is transcribed with scalars: extrapolate, average the sampled
// block, refresh its gradient, prox with the p^-1 scaled correction.
TEST(RpdgStep, TwoStepScalarTranscript) {
  const std::vector<double> curv = {1.0, 2.0};
  ProblemInstance p = testing::QuadraticInstance(
      {Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::MatrixXd::Constant(1, 1, 2.0)},
      {Vec::Zero(1), Vec::Zero(1)}, 1.0);
  const Schedule s = RpdgUniform(p.lip, p.mu);
  const double tau = s.tau, eta = s.eta, alpha = s.alpha_extrap, mu = 1.0;
  for (int first = 0; first < 2; ++first) {
    for (int second = 0; second < 2; ++second) {
      double x_pp = 1.0, x_p = 1.0;
      double under[2] = {1.0, 1.0};
      double y[2] = {1.0, 2.0};
      double g = 3.0;
      RpdgState state = RpdgInit(p, Vec::Ones(1));
      ASSERT_DOUBLE_EQ(state.g_sum(0), 3.0);
      for (int i : {first, second}) {
        const double x_tilde = x_p + alpha * (x_p - x_pp);
        under[i] = (x_tilde + tau * under[i]) / (1.0 + tau);
        const double y_new = curv[i] * under[i];
        const double input = g + (y_new - y[i]) / 0.5;
        // argmin input*x + mu x^2/2 + eta (x - x_p)^2/2
        const double x = (eta * x_p - input) / (mu + eta);
        g += y_new - y[i];
        y[i] = y_new;
        x_pp = x_p;
        x_p = x;
        RpdgStep(p, s.At(state.t + 1), i, 0.5, state);
        EXPECT_NEAR(state.x_prev(0), x_p, 1e-15);
        EXPECT_NEAR(state.blocks[i].x_under(0), under[i], 1e-15);
        EXPECT_NEAR(state.g_sum(0), g, 1e-15);
      }
    }
  }
}

TEST(RunRpdg, ZeroIterationsReturnsStart) {
  Gen gen(43);
  ProblemInstance p = testing::RandomSpdInstance(gen, 3, 4, 1.0);
  const Vec x0 = gen.Vector(4);
  SolveResult r = RunRpdg(p, RpdgNonuniform(p.lip, p.mu), x0, {.k_max = 0});
  EXPECT_EQ(r.x, x0);
  EXPECT_EQ(r.x_bar, x0);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.grad_evals, 3);
}

TEST(RpdgInit, DualBlocksHoldInitialGradients) {
  Gen gen(44);
  ProblemInstance p = testing::RandomSpdInstance(gen, 4, 5, 1.0);
  const Vec x0 = gen.Vector(5);
  const RpdgState state = RpdgInit(p, x0);
  EXPECT_LE(testing::SupNorm(state.g_sum, FullGradient(p, x0)), 1e-13);
  EXPECT_EQ(state.grad_evals, 4);
}

TEST(RunRpdg, GradientLedgerIsMPlusK) {
  Gen gen(45);
  ProblemInstance p = testing::RandomSpdInstance(gen, 5, 3, 1.0);
  SolveResult r = RunRpdg(p, RpdgUniform(p.lip, p.mu), Vec::Zero(3),
                          {.k_max = 250, .seed = 3});
  EXPECT_EQ(r.grad_evals, 255);
  for (const TraceRow& row : r.trace.rows) EXPECT_EQ(row.grad_evals, 5 + row.t);
}

TEST(RunRpdg, SameSeedSameTrace) {
  Gen gen(46);
  ProblemInstance p = testing::RandomSpdInstance(gen, 6, 5, 0.3);
  const Vec x0 = gen.Vector(5);
  const Schedule s = RpdgNonuniform(p.lip, p.mu);
  SolveResult a = RunRpdg(p, s, x0, {.k_max = 500, .seed = 17});
  SolveResult b = RunRpdg(p, s, x0, {.k_max = 500, .seed = 17});
  SolveResult c = RunRpdg(p, s, x0, {.k_max = 500, .seed = 18});
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    ASSERT_EQ(a.trace.rows[k].dist_p, b.trace.rows[k].dist_p);
    ASSERT_EQ(a.trace.rows[k].obj_ergodic, b.trace.rows[k].obj_ergodic);
  }
  EXPECT_NE(a.x, c.x);
}

TEST(RunRpdg, GradientSumDriftStaysSmall) {
  Gen gen(47);
  ProblemInstance p = testing::RandomSpdInstance(gen, 10, 8, 0.1, 0.1, 10.0);
  RpdgState state = RunRpdgObserved(p, RpdgNonuniform(p.lip, p.mu),
                                    gen.Vector(8, 5.0), 100000, 9, nullptr);
  EXPECT_LE(state.max_gsum_drift, 1e-8);
  EXPECT_LE(ResumGradient(state), 1e-8);
}

TEST(RunRpdg, RejectsInvalidSchedules) {
  Gen gen(48);
  ProblemInstance p = testing::RandomSpdInstance(gen, 3, 4, 1.0);
  const Vec x0 = Vec::Zero(4);
  EXPECT_THROW(RunRpdg(p, PdgStronglyConvex(p.lip_f, p.mu), x0, {.k_max = 3}), Error);
  Schedule bad = RpdgNonuniform(p.lip, p.mu);
  bad.eta *= 0.5;  // breaks eta tau p_i >= 4 L_i
  try {
    RunRpdg(p, bad, x0, {.k_max = 3});
    FAIL() << "expected an invalid schedule error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSchedule);
    EXPECT_NE(std::string(e.what()).find("s3"), std::string::npos) << e.what();
  }
  Schedule short_probs = RpdgNonuniform(p.lip, p.mu);
  short_probs.probs.pop_back();
  EXPECT_THROW(RunRpdg(p, short_probs, x0, {.k_max = 3}), Error);
}

TEST(RunRpdg, TraceCarriesDistanceBound) {
  Gen gen(49);
  ProblemInstance p = testing::RandomSpdInstance(gen, 3, 4, 1.0);
  const Vec x0 = gen.Vector(4);
  const Schedule s = RpdgNonuniform(p.lip, p.mu);
  SolveResult r = RunRpdg(p, s, x0, {.k_max = 20, .seed = 1});
  const double p0 = PrimalProxDistance(x0, *p.opt_x);
  for (const TraceRow& row : r.trace.rows) {
    ASSERT_TRUE(row.bound_upper.has_value());
    EXPECT_NEAR(*row.bound_upper,
                (1 + 3 * p.lip_f / p.mu) * std::pow(s.contraction, row.t) * p0,
                1e-12 * *row.bound_upper);
  }
}

TEST(RunRpdg, ExpectedDistanceWithinBound) {
  Gen gen(50);
  ProblemInstance p = testing::RandomSpdInstance(gen, 4, 5, 0.5, 0.1, 4.0);
  const Vec x0 = gen.Vector(5, 2.0);
  for (const Schedule& s : {RpdgNonuniform(p.lip, p.mu), RpdgUniform(p.lip, p.mu)}) {
    EnsembleStats stats = RunRpdgEnsemble(
        p, s, x0, {.k_max = 300, .seeds = SeedRange(1, 200), .record_gap = true});
    const double p0 = PrimalProxDistance(x0, *p.opt_x);
    const CurveParams cp{p.mu, p.lip_f, s.contraction, s.eta, p0};
    for (std::int64_t k = 1; k <= 300; ++k) {
      const double bound = TheoreticalUpperCurve(DistCurveFor(s), cp, k);
      EXPECT_LE(stats.dist.mean[k - 1], bound + 3 * stats.dist.std_error[k - 1]);
      const double gap_bound = TheoreticalUpperCurve(CurveKind::kRpdgGap, cp, k);
      EXPECT_LE(stats.gap.mean[k - 1], gap_bound + 3 * stats.gap.std_error[k - 1]);
    }
  }
}

TEST(RunRpdgEnsemble, EqualSeedsHaveZeroVariance) {
  Gen gen(51);
  ProblemInstance p = testing::RandomSpdInstance(gen, 3, 4, 1.0);
  EnsembleStats stats = RunRpdgEnsemble(p, RpdgUniform(p.lip, p.mu), Vec::Ones(4),
                                        {.k_max = 50, .seeds = {7, 7, 7, 7}});
  for (std::size_t k = 0; k < 50; ++k) {
    EXPECT_EQ(stats.dist.std_error[k], 0.0);
    EXPECT_EQ(stats.dist.q10[k], stats.dist.q90[k]);
  }
}

TEST(RunRpdgEnsemble, SingleComponentReplicatesOneRun) {
  Gen gen(52);
  ProblemInstance p = testing::RandomSpdInstance(gen, 1, 4, 1.0);
  const Vec x0 = gen.Vector(4);
  const Schedule s = RpdgNonuniform(p.lip, p.mu);
  SolveResult single = RunRpdg(p, s, x0, {.k_max = 40, .seed = 1});
  EnsembleStats stats =
      RunRpdgEnsemble(p, s, x0, {.k_max = 40, .seeds = SeedRange(1, 5)});
  for (std::size_t k = 0; k < 40; ++k) {
    EXPECT_DOUBLE_EQ(stats.dist.mean[k], *single.trace.rows[k].dist_p);
    // Only the rounding of sum/5 separates the mean from the common value.
    EXPECT_LE(stats.dist.std_error[k], 1e-14 * stats.dist.mean[k]);
  }
}

TEST(RunRpdgEnsemble, IndependentOfThreadCount) {
  Gen gen(53);
  ProblemInstance p = testing::RandomSpdInstance(gen, 5, 4, 1.0);
  const Schedule s = RpdgNonuniform(p.lip, p.mu);
  EnsembleOptions options{.k_max = 100, .seeds = SeedRange(10, 16), .record_gap = true};
  options.threads = 1;
  EnsembleStats serial = RunRpdgEnsemble(p, s, Vec::Ones(4), options);
  options.threads = 4;
  EnsembleStats parallel = RunRpdgEnsemble(p, s, Vec::Ones(4), options);
  EXPECT_EQ(serial.dist.mean, parallel.dist.mean);
  EXPECT_EQ(serial.dist.std_error, parallel.dist.std_error);
  EXPECT_EQ(serial.gap.q50, parallel.gap.q50);
}

TEST(RunRpdgEnsemble, Errors) {
  Gen gen(54);
  ProblemInstance p = testing::RandomSpdInstance(gen, 2, 3, 1.0);
  const Schedule s = RpdgNonuniform(p.lip, p.mu);
  EXPECT_THROW(RunRpdgEnsemble(p, s, Vec::Zero(3), {.k_max = 5, .seeds = {1}}), Error);
  p.opt_x.reset();
  EXPECT_THROW(RunRpdgEnsemble(p, s, Vec::Zero(3), {.k_max = 5, .seeds = {1, 2}}),
               Error);
}

TEST(Summarize, HandComputedStatistics) {
  const SeriesStats stats = Summarize({{1.0}, {2.0}, {3.0}, {4.0}});
  EXPECT_DOUBLE_EQ(stats.mean[0], 2.5);
  // sample variance 5/3, standard error sqrt(5/12)
  EXPECT_DOUBLE_EQ(stats.std_error[0], std::sqrt(5.0 / 12.0));
  EXPECT_DOUBLE_EQ(stats.q50[0], 2.5);
  EXPECT_DOUBLE_EQ(stats.q10[0], 1.3);
}

}  // namespace
}  // namespace rpdg
