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

#ifndef RPDG_TRACE_H_
#define RPDG_TRACE_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace rpdg {

// One record per completed iteration. Absent quantities stay empty and are
// written as blank cells.
struct TraceRow {
  std::int64_t t = 0;
  std::int64_t grad_evals = 0;
  std::optional<std::int64_t> wall_ns;
  std::optional<double> dist_p;       // P(x^t, x*)
  std::optional<double> obj;          // Psi(x^t)
  std::optional<double> obj_ergodic;  // Psi(x-bar^t)
  std::optional<double> bound_upper;
  std::optional<double> bound_lower;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct Trace {
  std::vector<TraceRow> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
  // Throws kInvalidArgument unless t is strictly increasing.
  void CheckMonotone() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// What a solver run records per iteration. Everything defaults on; ensembles
// and long benchmarks switch off the expensive parts.
struct RecordOptions {
  bool objective = true;  // obj and obj_ergodic (needs value oracles)
  bool wall_time = false;
  bool bound = true;
};

}  // namespace rpdg

#endif  // RPDG_TRACE_H_
