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

#include "incgan/training.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "incgan/errors.hpp"

namespace incgan {

double TrainSchedule::learning_rate(double base, std::size_t epoch) const {
  const auto drop_epoch = static_cast<std::size_t>(std::llround(drop_at * static_cast<double>(epochs)));
  return (drop_epoch > 0 && epoch >= drop_epoch) ? base * drop_factor : base;
}

void TrainSchedule::validate() const {
  if (epochs == 0) throw ContractError("epochs must be positive");
  if (batch_size == 0) throw ContractError("batch_size must be positive");
}

namespace {

std::vector<std::size_t> shuffled_rows(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  return order;
}

// Calls step(minibatch) for every minibatch of every epoch after setting the
// epoch's learning rate.
template <typename Step>
void run_epochs(const LabeledBatch& data, SgdOptimizer& optimizer, double base_lr,
                const TrainSchedule& schedule, Rng& rng, Step&& step) {
  for (std::size_t epoch = 0; epoch < schedule.epochs; ++epoch) {
    optimizer.set_learning_rate(schedule.learning_rate(base_lr, epoch));
    const auto order = shuffled_rows(data.size(), rng);
    for (std::size_t begin = 0; begin < order.size(); begin += schedule.batch_size) {
      const std::size_t end = std::min(order.size(), begin + schedule.batch_size);
      const LabeledBatch mb =
          data.subset(std::span<const std::size_t>(order.data() + begin, end - begin));
      Tensor loss;
      try {
        loss = step(mb);
      } catch (const NumericError& e) {
        throw TrainingError("diverged at epoch " + std::to_string(epoch) + ": " + e.what());
      }
      if (!std::isfinite(loss.item())) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch));
      }
      loss.backward();
      optimizer.step();
    }
  }
}

}  // namespace

void train_supervised(ClassifierNet& net, const LabeledBatch& data, const SgdConfig& opt,
                      const TrainSchedule& schedule, Rng& rng) {
  schedule.validate();
  if (data.is_empty()) throw ContractError("training data is empty");
  data.require_labels_in(0, static_cast<int>(net.class_count()), "train_supervised");
  SgdOptimizer optimizer(net.parameters(), opt);
  run_epochs(data, optimizer, opt.learning_rate, schedule, rng, [&](const LabeledBatch& mb) {
    return cross_entropy_loss(net.forward(mb.inputs), mb.labels);
  });
}

ClassifierNet incremental_train(const FrozenClassifier& old, ClassifierNet new_net,
                                const LabeledBatch& new_data, const LabeledBatch& memory,
                                const LossConfig& cfg, const SgdConfig& opt,
                                const TrainSchedule& schedule, Rng& rng) {
  cfg.validate();
  schedule.validate();
  const std::size_t n = cfg.old_classes, m = cfg.new_classes;
  if (new_data.is_empty()) throw ContractError("incremental_train: new data is empty");
  if (new_net.class_count() != n + m) {
    throw ContractError("incremental_train: network has " + std::to_string(new_net.class_count()) +
                        " outputs, expected " + std::to_string(n + m));
  }
  if (old.class_count() != n) {
    throw ContractError("incremental_train: old classifier has " +
                        std::to_string(old.class_count()) + " classes, expected " +
                        std::to_string(n));
  }
  memory.require_labels_in(0, static_cast<int>(n), "incremental_train memory");
  new_data.require_labels_in(static_cast<int>(n), static_cast<int>(m), "incremental_train new data");

  const LabeledBatch data = memory.is_empty() ? new_data : concat(memory, new_data);
  SgdOptimizer optimizer(new_net.parameters(), opt);
  run_epochs(data, optimizer, opt.learning_rate, schedule, rng, [&](const LabeledBatch& mb) {
    const Tensor logits = new_net.forward(mb.inputs);
    const Tensor ce = cross_entropy_loss(logits, mb.labels);
    if (cfg.lambda == 0.0) return ce;
    const Tensor distill = distillation_loss(old, logits, mb.inputs, cfg);
    return combined_loss(distill, ce, cfg);
  });
  return new_net;
}

}  // namespace incgan
