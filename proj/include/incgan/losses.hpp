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

#include "incgan/models.hpp"
#include "incgan/tensor.hpp"

namespace incgan {

struct LossConfig {
  double lambda = 0.5;       // weight of the distillation term
  double temperature = 2.0;  // softening applied to both teacher and student
  std::size_t old_classes = 0;
  std::size_t new_classes = 0;

  void validate() const;
};

/// Temperature-softened distillation over the old classes.
///
/// Teacher p = softmax(teacher_logits / T) over the n old classes; student
/// q = softmax(new_logits[:, :n] / T), renormalized over the same n columns.
/// Returns the batch mean of -sum_k p_k log q_k. No T^2 rescaling.
Tensor distillation_loss_from_logits(const Tensor& teacher_logits, const Tensor& new_logits,
                                     const LossConfig& cfg);

/// As above with teacher logits computed by the frozen classifier on
/// `batch_inputs`.
Tensor distillation_loss(const FrozenClassifier& old, const Tensor& new_logits,
                         const Tensor& batch_inputs, const LossConfig& cfg);

/// Batch mean of -log softmax(logits)[label] over all classes at T = 1.
Tensor cross_entropy_loss(const Tensor& logits, std::span<const int> labels);

/// lambda * distill + (1 - lambda) * ce; the endpoints return the selected
/// term itself.
Tensor combined_loss(const Tensor& distill, const Tensor& ce, const LossConfig& cfg);

}  // namespace incgan
