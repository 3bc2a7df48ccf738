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

#include "rpdg/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "fmt/format.h"
#include "rpdg/error.h"

namespace rpdg {

namespace {

// Upper limit on svmlight feature indices; larger ones are reported as
// overflow instead of densified.
constexpr long kMaxFeatures = 1 << 20;

[[noreturn]] void ParseFail(int line, const std::string& what) {
  Fail(ErrorCode::kParse, fmt::format("line {}: {}", line, what));
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> ToDouble(std::string_view s) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Calls fn(line_number, line) for every line.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  int number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(++number, text.substr(start, end - start));
    start = end + 1;
  }
}

DatasetMatrix Assemble(const std::vector<std::vector<double>>& rows,
                       const std::vector<double>& labels, int width) {
  DatasetMatrix d;
  d.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), width);
  d.b.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < rows[r].size(); ++j) d.a(r, j) = rows[r][j];
    d.b[r] = labels[r];
  }
  return d;
}

DatasetMatrix ParseCsv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  int width = -1;
  bool seen_line = false;
  ForEachLine(text, [&](int line, std::string_view raw) {
    const std::string_view content = Trim(raw);
    if (content.empty()) return;
    const bool first = !seen_line;
    seen_line = true;
    const auto fields = Split(content, ',');
    std::vector<double> values;
    values.reserve(fields.size());
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto v = ToDouble(fields[f]);
      if (!v) {
        if (first) return;  // header
        ParseFail(line, fmt::format("field {} is not a finite number", f + 1));
      }
      values.push_back(*v);
    }
    if (values.size() < 2) {
      ParseFail(line, "need at least one feature and a label");
    }
    const int cols = static_cast<int>(values.size()) - 1;
    if (width >= 0 && cols != width) {
      ParseFail(line, fmt::format("ragged row: {} features, expected {}", cols,
                                  width));
    }
    width = cols;
    labels.push_back(values.back());
    values.pop_back();
    rows.push_back(std::move(values));
  });
  if (rows.empty()) Fail(ErrorCode::kParse, "dataset has no data rows");
  return Assemble(rows, labels, width);
}

DatasetMatrix ParseSvmlight(std::string_view text, int n_features) {
  std::vector<std::vector<std::pair<long, double>>> entries;
  std::vector<double> labels;
  long width = n_features;
  ForEachLine(text, [&](int line, std::string_view raw) {
    std::string_view content = raw;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) {
      content = content.substr(0, hash);
    }
    content = Trim(content);
    if (content.empty()) return;
    std::vector<std::string_view> tokens;
    for (std::string_view tok : Split(content, ' ')) {
      for (std::string_view t : Split(tok, '\t')) {
        t = Trim(t);
        if (!t.empty()) tokens.push_back(t);
      }
    }
    const auto label = ToDouble(tokens.front());
    if (!label) ParseFail(line, "label is not a finite number");
    std::vector<std::pair<long, double>> row;
    std::set<long> used;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const auto colon = tokens[k].find(':');
      if (colon == std::string_view::npos) {
        ParseFail(line, fmt::format("token '{}' is not idx:val", tokens[k]));
      }
      const std::string_view idx_text = tokens[k].substr(0, colon);
      long idx = 0;
      const auto [ptr, ec] = std::from_chars(
          idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (ec == std::errc::result_out_of_range ||
          (ec == std::errc() && idx > kMaxFeatures)) {
        ParseFail(line, fmt::format("feature index '{}' overflows", idx_text));
      }
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() ||
          idx < 1) {
        ParseFail(line, fmt::format("bad feature index '{}'", idx_text));
      }
      if (n_features > 0 && idx > n_features) {
        ParseFail(line, fmt::format("feature index {} exceeds n = {}", idx,
                                    n_features));
      }
      if (!used.insert(idx).second) {
        ParseFail(line, fmt::format("duplicate feature index {}", idx));
      }
      const auto v = ToDouble(tokens[k].substr(colon + 1));
      if (!v) ParseFail(line, fmt::format("bad value in '{}'", tokens[k]));
      row.emplace_back(idx, *v);
      width = std::max(width, idx);
    }
    labels.push_back(*label);
    entries.push_back(std::move(row));
  });
  if (entries.empty()) Fail(ErrorCode::kParse, "dataset has no data rows");
  if (width < 1) Fail(ErrorCode::kParse, "dataset has no features");
  DatasetMatrix d;
  d.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(entries.size()), width);
  d.b = Eigen::Map<const Eigen::VectorXd>(labels.data(),
                                          static_cast<Eigen::Index>(labels.size()));
  for (std::size_t r = 0; r < entries.size(); ++r) {
    for (const auto& [idx, v] : entries[r]) d.a(r, idx - 1) = v;
  }
  return d;
}

}  // namespace

DataFormat ParseDataFormat(std::string_view name) {
  if (name == "csv") return DataFormat::kCsv;
  if (name == "svmlight" || name == "svmlight-text") return DataFormat::kSvmlight;
  Fail(ErrorCode::kInvalidArgument, fmt::format("unknown data format '{}'", name));
}

DatasetMatrix ParseDataset(std::string_view text, DataFormat format,
                           int n_features) {
  Require(n_features >= 0 && n_features <= kMaxFeatures,
          ErrorCode::kInvalidArgument, "n_features out of range");
  DatasetMatrix d = format == DataFormat::kCsv ? ParseCsv(text)
                                               : ParseSvmlight(text, n_features);
  d.format = format;
  return d;
}

DatasetMatrix LoadDataset(const std::string& path, DataFormat format,
                          int n_features) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kParse, fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  DatasetMatrix d = ParseDataset(buffer.str(), format, n_features);
  d.source = path;
  return d;
}

}  // namespace rpdg
