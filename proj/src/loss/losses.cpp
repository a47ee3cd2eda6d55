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

#include "incgan/losses.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "incgan/errors.hpp"
#include "incgan/ops.hpp"

namespace incgan {

void LossConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ContractError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ContractError("temperature must be positive, got " + std::to_string(temperature));
  }
}

Tensor distillation_loss_from_logits(const Tensor& teacher_logits, const Tensor& new_logits,
                                     const LossConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.old_classes;
  if (n == 0) throw ContractError("distillation needs at least one old class");
  if (new_logits.rank() != 2 || new_logits.cols() != n + cfg.new_classes) {
    throw DimensionError("student logits " + shape_string(new_logits.shape()) + " do not have " +
                         std::to_string(n + cfg.new_classes) + " columns");
  }
  if (teacher_logits.rank() != 2 || teacher_logits.cols() != n ||
      teacher_logits.rows() != new_logits.rows()) {
    throw DimensionError("teacher logits " + shape_string(teacher_logits.shape()) +
                         " do not match B x " + std::to_string(n));
  }
  const Tensor targets = softmax(teacher_logits.detach(), cfg.temperature);
  const Tensor student = log_softmax(slice_cols(new_logits, 0, n), cfg.temperature);
  // mean over rows of -sum_k p_k log q_k
  const Tensor per_row = row_sum(mul(targets, student));
  return scale(mean(per_row), -1.0);
}

Tensor distillation_loss(const FrozenClassifier& old, const Tensor& new_logits,
                         const Tensor& batch_inputs, const LossConfig& cfg) {
  if (old.class_count() != cfg.old_classes) {
    throw ContractError("frozen classifier has " + std::to_string(old.class_count()) +
                        " classes, loss expects " + std::to_string(cfg.old_classes));
  }
  return distillation_loss_from_logits(old.forward(batch_inputs), new_logits, cfg);
}

Tensor cross_entropy_loss(const Tensor& logits, std::span<const int> labels) {
  const std::size_t k = logits.cols();
  if (logits.rows() != labels.size()) {
    throw DimensionError("cross_entropy: " + std::to_string(labels.size()) + " labels for logits " +
                         shape_string(logits.shape()));
  }
  std::vector<std::size_t> index(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= k) {
      throw ContractError("cross_entropy: label " + std::to_string(labels[i]) + " outside [0, " +
                          std::to_string(k) + ")");
    }
    index[i] = static_cast<std::size_t>(labels[i]);
  }
  return scale(mean(pick(log_softmax(logits, 1.0), index)), -1.0);
}

Tensor combined_loss(const Tensor& distill, const Tensor& ce, const LossConfig& cfg) {
  cfg.validate();
  if (cfg.lambda == 0.0) return ce;
  if (cfg.lambda == 1.0) return distill;
  return add(scale(distill, cfg.lambda), scale(ce, 1.0 - cfg.lambda));
}

}  // namespace incgan
