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


#include "rpdg/config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "boost/property_tree/ini_parser.hpp"
#include "boost/property_tree/ptree.hpp"
#include "fmt/format.h"
#include "rpdg/ensemble.h"
#include "rpdg/error.h"
#include "rpdg/trace_io.h"

namespace rpdg {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseValue(std::string_view key, std::string_view text) {
  text = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  Require(!text.empty() && ec == std::errc() && ptr == text.data() + text.size(),
          ErrorCode::kParse, fmt::format("{}: bad value '{}'", key, text));
  if constexpr (std::is_floating_point_v<T>) {
    Require(std::isfinite(value), ErrorCode::kParse,
            fmt::format("{}: value must be finite", key));
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  text = Trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  Fail(ErrorCode::kParse,
       fmt::format("{}: expected true or false, got '{}'", key, text));
}

std::vector<std::uint64_t> ParseSeedList(std::string_view key,
                                         std::string_view text) {
  std::vector<std::uint64_t> seeds;
  while (true) {
    std::size_t comma = text.find(',');
    seeds.push_back(ParseValue<std::uint64_t>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return seeds;
}

template <typename Enum, std::size_t N>
Enum ParseName(std::string_view key, std::string_view text,
               const Enum (&options)[N], std::string_view (*name)(Enum)) {
  text = Trim(text);
  for (Enum option : options) {
    if (name(option) == text) return option;
  }
  Fail(ErrorCode::kParse, fmt::format("{}: unknown value '{}'", key, text));
}

constexpr InstanceFamily kFamilies[] = {
    InstanceFamily::kRandomQuadratic, InstanceFamily::kWorstCase,
    InstanceFamily::kLogistic, InstanceFamily::kAbsloss};
constexpr SolverMethod kMethods[] = {
    SolverMethod::kPdg, SolverMethod::kRpdg, SolverMethod::kPerturb,
    SolverMethod::kSmooth, SolverMethod::kUnconstrained};

struct SeedKeys {
  std::optional<int> count;
  std::optional<std::uint64_t> base;
  bool listed = false;
};

struct Target {
  RunConfig& config;
  SeedKeys& seeds;
};

using Setter = std::function<void(Target&, std::string_view key,
                                  std::string_view value)>;

template <typename T, typename Field>
Setter Number(Field field) {
  return [field](Target& t, std::string_view key, std::string_view v) {
    field(t.config) = ParseValue<T>(key, v);
  };
}

template <typename Field>
Setter Bool(Field field) {
  return [field](Target& t, std::string_view key, std::string_view v) {
    field(t.config) = ParseBool(key, v);
  };
}

template <typename Field>
Setter Text(Field field) {
  return [field](Target& t, std::string_view, std::string_view v) {
    field(t.config) = std::string(Trim(v));
  };
}

#define RPDG_FIELD(path) [](RunConfig& c) -> auto& { return c.path; }

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"instance.family",
       [](Target& t, std::string_view key, std::string_view v) {
         t.config.instance.family =
             ParseName(key, v, kFamilies, &InstanceFamilyName);
       }},
      {"instance.m", Number<int>(RPDG_FIELD(instance.m))},
      {"instance.n", Number<int>(RPDG_FIELD(instance.n))},
      {"instance.mu", Number<double>(RPDG_FIELD(instance.mu))},
      {"instance.cond", Number<double>(RPDG_FIELD(instance.cond))},
      {"instance.seed", Number<std::uint64_t>(RPDG_FIELD(instance.seed))},
      {"instance.aligned", Bool(RPDG_FIELD(instance.aligned))},
      {"instance.equal_lip", Bool(RPDG_FIELD(instance.equal_lip))},
      {"instance.lip_scale", Number<double>(RPDG_FIELD(instance.lip_scale))},
      {"instance.consistent", Bool(RPDG_FIELD(instance.consistent))},
      {"instance.box", Number<double>(RPDG_FIELD(instance.box))},
      {"instance.n_tilde", Number<int>(RPDG_FIELD(instance.n_tilde))},
      {"instance.Q", Number<double>(RPDG_FIELD(instance.Q))},
      {"instance.data", Text(RPDG_FIELD(instance.data))},
      {"instance.format",
       [](Target& t, std::string_view, std::string_view v) {
         t.config.instance.format = ParseDataFormat(Trim(v));
       }},
      {"instance.features", Number<int>(RPDG_FIELD(instance.features))},
      {"instance.groups", Number<int>(RPDG_FIELD(instance.groups))},
      {"solver.method",
       [](Target& t, std::string_view key, std::string_view v) {
         t.config.solver.method = ParseName(key, v, kMethods, &SolverMethodName);
       }},
      {"solver.schedule",
       [](Target& t, std::string_view, std::string_view v) {
         t.config.solver.schedule = ParseScheduleKind(Trim(v));
       }},
      {"solver.eps",
       [](Target& t, std::string_view key, std::string_view v) {
         t.config.solver.eps = ParseValue<double>(key, v);
       }},
      {"solver.lambda",
       [](Target& t, std::string_view key, std::string_view v) {
         t.config.solver.lambda = ParseValue<double>(key, v);
       }},
      {"solver.k_max", Number<std::int64_t>(RPDG_FIELD(solver.k_max))},
      {"solver.seeds",
       [](Target& t, std::string_view key, std::string_view v) {
         t.config.solver.seeds = ParseSeedList(key, v);
         t.seeds.listed = true;
       }},
      {"solver.seed_count",
       [](Target& t, std::string_view key, std::string_view v) {
         t.seeds.count = ParseValue<int>(key, v);
       }},
      {"solver.seed_base",
       [](Target& t, std::string_view key, std::string_view v) {
         t.seeds.base = ParseValue<std::uint64_t>(key, v);
       }},
      {"solver.threads", Number<int>(RPDG_FIELD(solver.threads))},
      {"solver.record_objective", Bool(RPDG_FIELD(solver.record_objective))},
      {"solver.timing", Bool(RPDG_FIELD(solver.timing))},
      {"output.dir", Text(RPDG_FIELD(output.dir))},
      {"output.prefix", Text(RPDG_FIELD(output.prefix))},
  };
  return *setters;
}

#undef RPDG_FIELD

}  // namespace

std::string_view InstanceFamilyName(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::kRandomQuadratic: return "random_quadratic";
    case InstanceFamily::kWorstCase: return "worst_case";
    case InstanceFamily::kLogistic: return "logistic";
    case InstanceFamily::kAbsloss: return "absloss";
  }
  return "?";
}

std::string_view SolverMethodName(SolverMethod method) {
  switch (method) {
    case SolverMethod::kPdg: return "pdg";
    case SolverMethod::kRpdg: return "rpdg";
    case SolverMethod::kPerturb: return "perturb";
    case SolverMethod::kSmooth: return "smooth";
    case SolverMethod::kUnconstrained: return "unconstrained";
  }
  return "?";
}

void RunConfig::Validate() const {
  const InstanceConfig& in = instance;
  auto check = [](bool ok, std::string_view message) {
    Require(ok, ErrorCode::kInvalidArgument, message);
  };
  check(in.m >= 1, "instance.m must be >= 1");
  check(in.mu >= 0.0, "instance.mu must be >= 0");
  switch (in.family) {
    case InstanceFamily::kRandomQuadratic:
      check(in.n >= 1, "instance.n must be >= 1");
      check(in.cond >= 1.0, "instance.cond must be >= 1");
      check(in.lip_scale > 0.0, "instance.lip_scale must be > 0");
      check(in.box >= 0.0, "instance.box must be >= 0");
      break;
    case InstanceFamily::kWorstCase:
      check(in.mu > 0.0, "worst_case needs instance.mu > 0");
      check(in.Q > 1.0, "worst_case needs instance.Q > 1");
      check(in.n_tilde >= 0, "instance.n_tilde must be >= 0");
      break;
    case InstanceFamily::kLogistic:
    case InstanceFamily::kAbsloss:
      check(!in.data.empty(), "instance.data is required for dataset families");
      check(in.features >= 0 && in.groups >= 0,
            "instance.features and instance.groups must be >= 0");
      break;
  }

  const SolverConfig& s = solver;
  check(s.k_max >= 1, "solver.k_max must be >= 1");
  check(!s.seeds.empty(), "solver needs at least one seed");
  check(s.threads >= 0, "solver.threads must be >= 0");
  const bool nonsmooth = in.family == InstanceFamily::kAbsloss;
  check(nonsmooth == (s.method == SolverMethod::kSmooth),
        "method smooth is required for, and only for, the absloss family");
  if (s.schedule) {
    const bool pdg_kind = *s.schedule == ScheduleKind::kPdgStronglyConvex ||
                          *s.schedule == ScheduleKind::kPdgNonStrongly;
    const bool rpdg_kind = *s.schedule == ScheduleKind::kRpdgNonuniform ||
                           *s.schedule == ScheduleKind::kRpdgUniform;
    check((s.method == SolverMethod::kPdg && pdg_kind) ||
              (s.method == SolverMethod::kRpdg && rpdg_kind),
          fmt::format("solver.schedule {} does not fit method {}",
                      ScheduleKindName(*s.schedule), SolverMethodName(s.method)));
  }
  if (s.method == SolverMethod::kPerturb || s.method == SolverMethod::kSmooth ||
      s.method == SolverMethod::kUnconstrained) {
    check(s.eps.has_value() && *s.eps > 0.0,
          fmt::format("method {} needs solver.eps > 0", SolverMethodName(s.method)));
  }
  if (s.lambda) {
    check(*s.lambda > 0.0 && *s.lambda < 1.0, "solver.lambda must lie in (0, 1)");
  }
  check(!output.prefix.empty() &&
            output.prefix.find('/') == std::string::npos,
        "output.prefix must be a non-empty file name stem");
}

RunConfig ParseConfig(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream stream{std::string(text)};
  try {
    boost::property_tree::ini_parser::read_ini(stream, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    Fail(ErrorCode::kParse,
         fmt::format("line {}: {}", e.line(), e.message()));
  }

  RunConfig config;
  SeedKeys seeds;
  Target target{config, seeds};
  for (const auto& [section, entries] : tree) {
    Require(entries.data().empty(), ErrorCode::kParse,
            fmt::format("key '{}' appears outside a section", section));
    for (const auto& [key, value] : entries) {
      const std::string full = section + "." + key;
      auto it = Setters().find(full);
      Require(it != Setters().end(), ErrorCode::kParse,
              fmt::format("unknown key '{}'", full));
      it->second(target, full, value.data());
    }
  }
  if (seeds.count || seeds.base) {
    Require(!seeds.listed, ErrorCode::kParse,
            "solver.seeds and solver.seed_count/seed_base are exclusive");
    Require(seeds.count.has_value() && *seeds.count >= 1, ErrorCode::kParse,
            "solver.seed_count must be given and >= 1");
    config.solver.seeds = SeedRange(seeds.base.value_or(1), *seeds.count);
  }
  config.Validate();
  return config;
}

RunConfig LoadConfig(const std::string& path) {
  return ParseConfig(ReadFile(path));
}

std::string CanonicalConfig(const RunConfig& config) {
  const InstanceConfig& in = config.instance;
  const SolverConfig& s = config.solver;
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  std::string seeds;
  for (std::size_t i = 0; i < s.seeds.size(); ++i) {
    if (i > 0) seeds += ',';
    seeds += std::to_string(s.seeds[i]);
  }
  return fmt::format(
      "[instance]\nfamily={}\nm={}\nn={}\nmu={}\ncond={}\nseed={}\naligned={}\n"
      "equal_lip={}\nlip_scale={}\nconsistent={}\nbox={}\nn_tilde={}\nQ={}\n"
      "data={}\nformat={}\nfeatures={}\ngroups={}\n"
      "[solver]\nmethod={}\nschedule={}\neps={}\nlambda={}\nk_max={}\n"
      "seeds={}\nthreads={}\nrecord_objective={}\ntiming={}\n"
      "[output]\ndir={}\nprefix={}\n",
      InstanceFamilyName(in.family), in.m, in.n, FormatDouble(in.mu),
      FormatDouble(in.cond), in.seed, in.aligned, in.equal_lip,
      FormatDouble(in.lip_scale), in.consistent, FormatDouble(in.box),
      in.n_tilde, FormatDouble(in.Q), in.data,
      in.format == DataFormat::kCsv ? "csv" : "svmlight", in.features,
      in.groups, SolverMethodName(s.method),
      s.schedule ? ScheduleKindName(*s.schedule) : std::string_view(),
      opt(s.eps), opt(s.lambda), s.k_max, seeds, s.threads,
      s.record_objective, s.timing, config.output.dir, config.output.prefix);
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string ConfigDigest(const RunConfig& config) {
  return fmt::format("{:016x}", Fnv1a64(CanonicalConfig(config)));
}

std::string ResolveOutputDir(const RunConfig& config) {
  if (!config.output.dir.empty()) return config.output.dir;
  if (const char* env = std::getenv(std::string(kOutputDirEnv).c_str());
      env != nullptr && *env != '\0') {
    return env;
  }
  return "rpdg_out";
}

}  // namespace rpdg
