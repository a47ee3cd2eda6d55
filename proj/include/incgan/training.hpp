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

#include "incgan/batch.hpp"
#include "incgan/losses.hpp"
#include "incgan/models.hpp"
#include "incgan/optim.hpp"
#include "incgan/rng.hpp"

namespace incgan {

// Minibatch schedule: constant learning rate, multiplied by drop_factor from
// epoch round(drop_at * epochs) onwards.
struct TrainSchedule {
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double drop_at = 0.7;
  double drop_factor = 0.1;

  double learning_rate(double base, std::size_t epoch) const;
  void validate() const;
};

/// Plain cross-entropy training over all of `data`, shuffled each epoch.
void train_supervised(ClassifierNet& net, const LabeledBatch& data, const SgdConfig& opt,
                      const TrainSchedule& schedule, Rng& rng);

/// Trains `new_net` (n + m outputs) on the shuffled union of `memory`
/// (labels in [0, n)) and `new_data` (labels in [n, n + m)) with
/// lambda * distillation + (1 - lambda) * cross-entropy. Distillation uses
/// `old` as the teacher on every sample of each minibatch.
ClassifierNet incremental_train(const FrozenClassifier& old, ClassifierNet new_net,
                                const LabeledBatch& new_data, const LabeledBatch& memory,
                                const LossConfig& cfg, const SgdConfig& opt,
                                const TrainSchedule& schedule, Rng& rng);

}  // namespace incgan
