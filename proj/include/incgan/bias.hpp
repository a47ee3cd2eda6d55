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

#include "incgan/batch.hpp"
#include "incgan/models.hpp"

namespace incgan {

// Multiplier applied to the new-class scores at prediction time.
struct BiasCorrection {
  double beta = 1.0;
  std::size_t old_classes = 0;
  std::size_t new_classes = 0;

  void validate() const;
};

/// Scales the last m columns of a B x (n+m) probability matrix by beta.
/// The result is for argmax only and is not renormalized.
Tensor apply_bias(const Tensor& probabilities, const BiasCorrection& bc);

/// Row-wise argmax of apply_bias(softmax(logits)); ties go to the smallest
/// class index.
std::vector<int> predict_from_logits(const Tensor& logits, const BiasCorrection& bc);
std::vector<int> predict(const ClassifierNet& net, const BiasCorrection& bc, const Tensor& inputs);

/// Fraction of rows where predictions equal labels.
double accuracy(std::span<const int> predictions, std::span<const int> labels);

/// {0.0, 0.1, ..., 1.0}.
std::vector<double> default_beta_grid();

/// Grid value with the best validation top-1; ties go to the largest beta.
BiasCorrection estimate_bias(const ClassifierNet& net, const LabeledBatch& validation,
                             std::span<const double> grid, std::size_t old_classes);

/// Validation accuracy at each grid value, in grid order.
std::vector<double> bias_accuracy_curve(const ClassifierNet& net, const LabeledBatch& data,
                                        std::span<const double> grid, std::size_t old_classes);

}  // namespace incgan
