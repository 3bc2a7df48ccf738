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


#include "rpdg/trace_io.h"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {
namespace {

constexpr int kColumns = 8;

void AppendInt(std::string& out, std::int64_t value) {
  char buffer[24];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, end);
}

void AppendDouble(std::string& out, double value) {
  char buffer[40];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::general, 17);
  out.append(buffer, end);
}

template <typename T>
void AppendOptional(std::string& out, const std::optional<T>& value) {
  out.push_back(',');
  if (!value) return;
  if constexpr (std::is_integral_v<T>) {
    AppendInt(out, *value);
  } else {
    AppendDouble(out, *value);
  }
}

template <typename T>
T ParseNumber(std::string_view cell, std::size_t line, std::string_view column) {
  T value{};
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  // from_chars rejects a leading '+', which no writer of ours produces.
  auto [ptr, ec] = std::from_chars(first, last, value);
  Require(ec == std::errc() && ptr == last, ErrorCode::kParse,
          fmt::format("line {}: bad {} value '{}'", line, column, cell));
  return value;
}

template <typename T>
std::optional<T> ParseOptional(std::string_view cell, std::size_t line,
                               std::string_view column) {
  if (cell.empty()) return std::nullopt;
  return ParseNumber<T>(cell, line, column);
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string FormatDouble(double value) {
  std::string out;
  AppendDouble(out, value);
  return out;
}

std::string FormatTrace(const Trace& trace) {
  std::string out(kTraceHeader);
  out.push_back('\n');
  for (const TraceRow& row : trace.rows) {
    AppendInt(out, row.t);
    out.push_back(',');
    AppendInt(out, row.grad_evals);
    AppendOptional(out, row.wall_ns);
    AppendOptional(out, row.dist_p);
    AppendOptional(out, row.obj);
    AppendOptional(out, row.obj_ergodic);
    AppendOptional(out, row.bound_upper);
    AppendOptional(out, row.bound_lower);
    out.push_back('\n');
  }
  return out;
}

Trace ParseTrace(std::string_view text) {
  Trace trace;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (!text.empty()) {
    std::size_t newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view()
                                             : text.substr(newline + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!saw_header) {
      Require(line == kTraceHeader, ErrorCode::kParse,
              fmt::format("line 1: expected trace header '{}', got '{}'",
                          kTraceHeader, line));
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> cells = SplitCells(line);
    Require(cells.size() == kColumns, ErrorCode::kParse,
            fmt::format("line {}: expected {} cells, got {}", line_no, kColumns,
                        cells.size()));
    TraceRow row;
    row.t = ParseNumber<std::int64_t>(cells[0], line_no, "t");
    Require(trace.rows.empty() || row.t > trace.rows.back().t, ErrorCode::kParse,
            fmt::format("line {}: t = {} does not increase", line_no, row.t));
    row.grad_evals = ParseNumber<std::int64_t>(cells[1], line_no, "grad_evals");
    row.wall_ns = ParseOptional<std::int64_t>(cells[2], line_no, "wall_ns");
    row.dist_p = ParseOptional<double>(cells[3], line_no, "dist_P");
    row.obj = ParseOptional<double>(cells[4], line_no, "obj");
    row.obj_ergodic = ParseOptional<double>(cells[5], line_no, "obj_ergodic");
    row.bound_upper = ParseOptional<double>(cells[6], line_no, "bound_upper");
    row.bound_lower = ParseOptional<double>(cells[7], line_no, "bound_lower");
    trace.rows.push_back(row);
  }
  Require(saw_header, ErrorCode::kParse, "empty trace file (no header)");
  return trace;
}

std::string FormatSeriesStats(const SeriesStats& stats, int m) {
  std::string out = "k,grad_evals,mean,std_error,q10,q50,q90\n";
  for (std::size_t k = 0; k < stats.mean.size(); ++k) {
    AppendInt(out, static_cast<std::int64_t>(k + 1));
    out.push_back(',');
    AppendInt(out, static_cast<std::int64_t>(k + 1) + m);
    for (const auto* column : {&stats.mean, &stats.std_error, &stats.q10,
                               &stats.q50, &stats.q90}) {
      out.push_back(',');
      AppendDouble(out, (*column)[k]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kInvalidArgument,
          fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    Require(out.good(), ErrorCode::kInvalidArgument,
            fmt::format("cannot write '{}'", temp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    Require(out.good(), ErrorCode::kInvalidArgument,
            fmt::format("write to '{}' failed", temp.string()));
  }
  std::filesystem::rename(temp, target);
}

void WriteTrace(const std::string& path, const Trace& trace) {
  WriteFile(path, FormatTrace(trace));
}

Trace ReadTrace(const std::string& path) { return ParseTrace(ReadFile(path)); }

}  // namespace rpdg
