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

#include "incgan/metrics.hpp"

#include <string>

#include "incgan/errors.hpp"

namespace incgan {

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : classes_(classes), counts_(classes * classes, 0) {}

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::vector<std::size_t> counts)
    : classes_(classes), counts_(std::move(counts)) {
  if (counts_.size() != classes_ * classes_) {
    throw DimensionError("confusion matrix of " + std::to_string(classes_) + " classes needs " +
                         std::to_string(classes_ * classes_) + " counts");
  }
}

void ConfusionMatrix::add(int truth, int predicted) {
  const auto k = static_cast<int>(classes_);
  if (truth < 0 || truth >= k || predicted < 0 || predicted >= k) {
    throw ContractError("confusion entry (" + std::to_string(truth) + ", " +
                        std::to_string(predicted) + ") outside [0, " + std::to_string(k) + ")");
  }
  ++counts_[static_cast<std::size_t>(truth) * classes_ + static_cast<std::size_t>(predicted)];
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < classes_; ++j) s += at(truth, j);
  return s;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < classes_; ++i) s += at(i, i);
  return s;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

double ConfusionMatrix::accuracy() const {
  const std::size_t t = total();
  if (t == 0) throw ContractError("accuracy of an empty confusion matrix");
  return static_cast<double>(trace()) / static_cast<double>(t);
}

std::vector<double> ConfusionMatrix::per_class_accuracy() const {
  std::vector<double> out(classes_, 0.0);
  for (std::size_t i = 0; i < classes_; ++i) {
    const std::size_t r = row_sum(i);
    if (r) out[i] = static_cast<double>(at(i, i)) / static_cast<double>(r);
  }
  return out;
}

ConfusionMatrix confusion_matrix(std::span<const int> predictions, std::span<const int> labels,
                                 std::size_t classes) {
  if (predictions.size() != labels.size()) {
    throw DimensionError("confusion_matrix: " + std::to_string(predictions.size()) +
                         " predictions for " + std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix cm(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) cm.add(labels[i], predictions[i]);
  return cm;
}

}  // namespace incgan
