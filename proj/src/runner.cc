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


#include "rpdg/runner.h"

#include "fmt/format.h"
#include "rpdg/dataset.h"
#include "rpdg/error.h"
#include "rpdg/instances.h"
#include "rpdg/pdg.h"
#include "rpdg/rpdg.h"
#include "rpdg/worstcase.h"
#include "rpdg/wrappers.h"

namespace rpdg {
namespace {

RecordOptions RecordFor(const RunConfig& config) {
  return {.objective = config.solver.record_objective,
          .wall_time = config.solver.timing,
          .bound = true};
}

WrapperOptions WrapperOptionsFor(const RunConfig& config, std::uint64_t seed) {
  WrapperOptions options;
  options.seed = seed;
  options.max_iterations = config.solver.k_max;
  if (config.solver.lambda) {
    options.mode = GuaranteeMode::kProbability;
    options.lambda = *config.solver.lambda;
  }
  options.record = RecordFor(config);
  return options;
}

double SmoothingDelta(const RunConfig& config, const NonsmoothProblem& np) {
  return *config.solver.eps / (2.0 * np.spec.omega_y_sq);
}

}  // namespace

BuiltInstance BuildInstance(const RunConfig& config) {
  config.Validate();
  const InstanceConfig& in = config.instance;
  BuiltInstance built;
  switch (in.family) {
    case InstanceFamily::kRandomQuadratic: {
      RandomQuadraticOptions options;
      options.m = in.m;
      options.n = in.n;
      options.mu = in.mu;
      options.cond_target = in.cond;
      options.seed = in.seed;
      options.aligned = in.aligned;
      options.equal_lip = in.equal_lip;
      options.lip_scale = in.lip_scale;
      options.consistent = in.consistent;
      built.problem = MakeRandomQuadratic(options);
      if (in.box > 0.0) {
        built.problem.feasible_set =
            FeasibleSet::Box(Eigen::VectorXd::Constant(in.n, -in.box),
                             Eigen::VectorXd::Constant(in.n, in.box));
        // The unconstrained minimizer stays optimal only if it is feasible.
        if (built.problem.opt_x &&
            !built.problem.feasible_set.Contains(*built.problem.opt_x)) {
          built.problem.opt_x.reset();
        }
      }
      break;
    }
    case InstanceFamily::kWorstCase: {
      WorstCaseSpec spec{in.m, in.n_tilde, in.mu, in.Q};
      if (spec.n_tilde == 0) {
        spec.n_tilde = MinimumDimension(in.m, in.Q, config.solver.k_max).n_tilde;
      }
      built.problem = BuildWorstCase(spec);
      break;
    }
    case InstanceFamily::kLogistic:
      built.problem = MakeLogistic(
          LoadDataset(in.data, in.format, in.features), in.mu, in.groups);
      break;
    case InstanceFamily::kAbsloss: {
      built.nonsmooth = MakeAbslossNonsmooth(
          LoadDataset(in.data, in.format, in.features), in.mu);
      built.problem = SmoothedInstance(*built.nonsmooth,
                                       SmoothingDelta(config, *built.nonsmooth));
      break;
    }
  }
  built.problem.Validate();
  built.x0 = Eigen::VectorXd::Zero(built.problem.n);
  return built;
}

Schedule ScheduleFor(const RunConfig& config, const ProblemInstance& problem) {
  const std::optional<ScheduleKind> kind = config.solver.schedule;
  switch (config.solver.method) {
    case SolverMethod::kPdg:
      if (kind.value_or(problem.mu > 0.0 ? ScheduleKind::kPdgStronglyConvex
                                         : ScheduleKind::kPdgNonStrongly) ==
          ScheduleKind::kPdgStronglyConvex) {
        return PdgStronglyConvex(problem.lip_f, problem.mu);
      }
      return PdgNonStrongly(problem.lip_f);
    case SolverMethod::kRpdg:
      if (kind == ScheduleKind::kRpdgUniform) {
        return RpdgUniform(problem.lip, problem.mu);
      }
      return RpdgNonuniform(problem.lip, problem.mu);
    default:
      Fail(ErrorCode::kInvalidArgument,
           fmt::format("method {} picks its own schedule",
                       SolverMethodName(config.solver.method)));
  }
}

RunOutcome RunSolve(const RunConfig& config, const BuiltInstance& built,
                    std::uint64_t seed) {
  const ProblemInstance& problem = built.problem;
  RunOutcome outcome;
  auto take = [&outcome](SolveResult&& r) {
    outcome.trace = std::move(r.trace);
    outcome.x_bar = std::move(r.x_bar);
    outcome.iterations = r.iterations;
    outcome.grad_evals = r.grad_evals;
  };
  auto take_wrapper = [&outcome, &problem](WrapperResult&& r) {
    outcome.trace = std::move(r.trace);
    outcome.x_bar = std::move(r.x_bar);
    outcome.iterations = r.iterations;
    outcome.grad_evals = problem.m + r.iterations;
    outcome.budget = r.budget;
  };
  const SolverConfig& s = config.solver;
  switch (s.method) {
    case SolverMethod::kPdg: {
      PdgOptions options;
      options.k_max = s.k_max;
      options.record = RecordFor(config);
      take(RunPdg(problem, ScheduleFor(config, problem), built.x0, options));
      break;
    }
    case SolverMethod::kRpdg: {
      RpdgOptions options;
      options.k_max = s.k_max;
      options.seed = seed;
      options.record = RecordFor(config);
      take(RunRpdg(problem, ScheduleFor(config, problem), built.x0, options));
      break;
    }
    case SolverMethod::kPerturb:
      take_wrapper(PerturbSolve(problem, *s.eps, built.x0,
                                WrapperOptionsFor(config, seed)));
      break;
    case SolverMethod::kSmooth:
      take_wrapper(SmoothSolve(*built.nonsmooth, *s.eps, built.x0,
                               WrapperOptionsFor(config, seed)));
      break;
    case SolverMethod::kUnconstrained:
      take_wrapper(UnconstrainedSolve(problem, *s.eps, built.x0,
                                      WrapperOptionsFor(config, seed)));
      break;
  }
  return outcome;
}

EnsembleStats RunEnsemble(const RunConfig& config, const BuiltInstance& built) {
  Require(config.solver.method == SolverMethod::kRpdg,
          ErrorCode::kInvalidArgument, "ensembles need method = rpdg");
  const ProblemInstance& problem = built.problem;
  EnsembleOptions options;
  options.k_max = config.solver.k_max;
  options.seeds = config.solver.seeds;
  options.threads = config.solver.threads;
  options.record_dist = problem.opt_x.has_value();
  options.record_gap = config.solver.record_objective &&
                       problem.opt_x.has_value() && problem.has_objective();
  Require(options.record_dist || options.record_gap, ErrorCode::kUnsupported,
          "the instance has no known optimum to measure against");
  return RunRpdgEnsemble(problem, ScheduleFor(config, problem), built.x0,
                         options);
}

ConditionReport ValidateRun(const RunConfig& config, const BuiltInstance& built) {
  const ProblemInstance& problem = built.problem;
  const SolverConfig& s = config.solver;
  switch (s.method) {
    case SolverMethod::kPdg:
      return ValidatePdgConditions(ScheduleFor(config, problem), problem.lip_f,
                                   problem.mu, std::max<std::int64_t>(2, s.k_max));
    case SolverMethod::kRpdg:
      return ValidateRpdgConditions(ScheduleFor(config, problem), problem.lip,
                                    problem.mu);
    case SolverMethod::kPerturb: {
      const ProblemInstance perturbed = PerturbedInstance(
          problem, MakePerturbationSpec(problem, *s.eps, built.x0));
      return ValidateRpdgConditions(RpdgNonuniform(perturbed.lip, perturbed.mu),
                                    perturbed.lip, perturbed.mu);
    }
    case SolverMethod::kSmooth: {
      if (problem.mu > 0.0) {
        return ValidateRpdgConditions(RpdgNonuniform(problem.lip, problem.mu),
                                      problem.lip, problem.mu);
      }
      const ProblemInstance perturbed = PerturbedInstance(
          problem, MakePerturbationSpec(problem, *s.eps / 2.0, built.x0));
      return ValidateRpdgConditions(RpdgNonuniform(perturbed.lip, perturbed.mu),
                                    perturbed.lip, perturbed.mu);
    }
    case SolverMethod::kUnconstrained: {
      const double total = problem.total_lip();
      const double delta = total * *s.eps / 2.0;
      return ValidateRpdgConditions(
          RpdgFromC(ScheduleKind::kRpdgNonuniform,
                    NonuniformProbabilities(problem.lip),
                    8.0 * (total + delta) / delta, delta),
          problem.lip, delta);
    }
  }
  return {};
}

}  // namespace rpdg
