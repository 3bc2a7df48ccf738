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

#ifndef RPDG_DATASET_H_
#define RPDG_DATASET_H_

#include <string>
#include <string_view>

#include "Eigen/Core"

namespace rpdg {

enum class DataFormat { kCsv, kSvmlight };

DataFormat ParseDataFormat(std::string_view name);

// Dense feature matrix (one row per sample) and labels.
struct DatasetMatrix {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  std::string source;
  DataFormat format = DataFormat::kCsv;

  int rows() const { return static_cast<int>(a.rows()); }
  int features() const { return static_cast<int>(a.cols()); }
};

// csv: comma-separated numbers, last column is the label, an optional
// non-numeric first line is taken as a header, blank lines are skipped.
// svmlight: "label idx:val ..." with 1-based indices and optional "# ..."
// comments. n_features = 0 infers the width from the largest index.
//
// Failures throw kParse with the offending line number. An input without data
// rows is an error.
DatasetMatrix ParseDataset(std::string_view text, DataFormat format,
                           int n_features = 0);
DatasetMatrix LoadDataset(const std::string& path, DataFormat format,
                          int n_features = 0);

}  // namespace rpdg

#endif  // RPDG_DATASET_H_
