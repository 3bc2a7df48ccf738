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

#include "rpdg/trace.h"

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

void Trace::CheckMonotone() const {
  for (std::size_t r = 1; r < rows.size(); ++r) {
    Require(rows[r].t > rows[r - 1].t, ErrorCode::kInvalidArgument,
            fmt::format("trace row {}: t = {} does not exceed {}", r, rows[r].t,
                        rows[r - 1].t));
  }
}

}  // namespace rpdg
