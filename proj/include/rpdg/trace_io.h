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


#ifndef RPDG_TRACE_IO_H_
#define RPDG_TRACE_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "rpdg/ensemble.h"
#include "rpdg/trace.h"

namespace rpdg {

inline constexpr std::string_view kTraceHeader =
    "t,grad_evals,wall_ns,dist_P,obj,obj_ergodic,bound_upper,bound_lower";

// Floats are written with 17 significant digits, so a parse/format cycle
// reproduces every value bit for bit. Absent values are blank cells.
std::string FormatTrace(const Trace& trace);
// Throws kParse on a header mismatch, a wrong cell count or a malformed
// number, naming the line.
Trace ParseTrace(std::string_view text);

void WriteTrace(const std::string& path, const Trace& trace);
Trace ReadTrace(const std::string& path);

// Across-seed summary: k,grad_evals,mean,std_error,q10,q50,q90 with
// grad_evals = m + k.
std::string FormatSeriesStats(const SeriesStats& stats, int m);

std::string FormatDouble(double value);
std::string ReadFile(const std::string& path);
// Writes through a temporary file and renames it into place.
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace rpdg

#endif  // RPDG_TRACE_IO_H_
