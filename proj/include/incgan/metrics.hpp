// Copyright 2026 The incgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace incgan {

// K x K counts; entry (i, j) is the number of class-i samples predicted as j.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t classes);
  ConfusionMatrix(std::size_t classes, std::vector<std::size_t> counts);

  void add(int truth, int predicted);

  std::size_t classes() const { return classes_; }
  std::size_t at(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * classes_ + predicted];
  }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t row_sum(std::size_t truth) const;
  std::size_t trace() const;
  std::size_t total() const;
  /// trace / total.
  double accuracy() const;
  /// Diagonal over row sum; 0 for empty rows.
  std::vector<double> per_class_accuracy() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t classes_ = 0;
  std::vector<std::size_t> counts_;
};

/// Tally of (label, prediction) pairs; entries must lie in [0, classes).
ConfusionMatrix confusion_matrix(std::span<const int> predictions, std::span<const int> labels,
                                 std::size_t classes);

}  // namespace incgan
