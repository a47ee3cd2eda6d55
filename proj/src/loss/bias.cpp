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

#include "incgan/bias.hpp"

#include <string>

#include "incgan/errors.hpp"
#include "incgan/ops.hpp"

namespace incgan {

void BiasCorrection::validate() const {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ContractError("beta must lie in [0, 1], got " + std::to_string(beta));
  }
}

Tensor apply_bias(const Tensor& probabilities, const BiasCorrection& bc) {
  bc.validate();
  const std::size_t k = bc.old_classes + bc.new_classes;
  if (probabilities.cols() != k) {
    throw DimensionError("apply_bias: " + shape_string(probabilities.shape()) + " does not have " +
                         std::to_string(k) + " columns");
  }
  Tensor out = probabilities.detach();
  auto v = out.mutable_values();
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = bc.old_classes; j < k; ++j) v[i * k + j] *= bc.beta;
  }
  return out;
}

namespace {

std::vector<int> argmax_rows(const Tensor& scores) {
  const std::size_t r = scores.rows(), c = scores.cols();
  std::vector<int> out(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < c; ++j) {
      if (scores.at(i, j) > scores.at(i, best)) best = j;
    }
    out[i] = static_cast<int>(best);
  }
  return out;
}

}  // namespace

std::vector<int> predict_from_logits(const Tensor& logits, const BiasCorrection& bc) {
  NoGradGuard guard;
  return argmax_rows(apply_bias(softmax(logits.detach(), 1.0), bc));
}

std::vector<int> predict(const ClassifierNet& net, const BiasCorrection& bc, const Tensor& inputs) {
  NoGradGuard guard;
  return predict_from_logits(net.forward(inputs), bc);
}

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) throw DimensionError("accuracy: length mismatch");
  if (labels.empty()) throw ContractError("accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) hits += predictions[i] == labels[i];
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<double> bias_accuracy_curve(const ClassifierNet& net, const LabeledBatch& data,
                                        std::span<const double> grid, std::size_t old_classes) {
  if (data.is_empty()) throw ContractError("bias estimation needs a non-empty validation set");
  NoGradGuard guard;
  const Tensor probs = softmax(net.forward(data.inputs), 1.0);
  const std::size_t k = net.class_count();
  if (old_classes > k) throw ContractError("more old classes than network outputs");
  std::vector<double> curve;
  curve.reserve(grid.size());
  for (double beta : grid) {
    const BiasCorrection bc{beta, old_classes, k - old_classes};
    curve.push_back(accuracy(argmax_rows(apply_bias(probs, bc)), data.labels));
  }
  return curve;
}

BiasCorrection estimate_bias(const ClassifierNet& net, const LabeledBatch& validation,
                             std::span<const double> grid, std::size_t old_classes) {
  if (grid.empty()) throw ContractError("bias estimation needs a non-empty grid");
  const auto curve = bias_accuracy_curve(net, validation, grid, old_classes);
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (curve[i] > curve[best] || (curve[i] == curve[best] && grid[i] > grid[best])) best = i;
  }
  return {grid[best], old_classes, net.class_count() - old_classes};
}

}  // namespace incgan
