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
#include <vector>

#include "incgan/batch.hpp"
#include "incgan/exemplar_store.hpp"
#include "incgan/gan.hpp"
#include "incgan/models.hpp"
#include "incgan/rng.hpp"

namespace incgan {

// Generated samples with their pseudo-labels, the frozen classifier's
// max-class probability, and their position in the generation stream.
struct ScoredBatch {
  LabeledBatch batch;
  std::vector<double> confidence;
  std::vector<std::size_t> generation_index;

  std::size_t size() const { return batch.size(); }
};

/// Labels each row with the argmax of the frozen classifier's softmax (T = 1)
/// and records that maximum as the confidence. Indices start at first_index.
ScoredBatch label_samples(const Tensor& samples, const FrozenClassifier& old,
                          std::size_t first_index = 0);

/// Draws `count` samples from the generator and labels them.
ScoredBatch pseudo_label(const GeneratorNet& generator, const FrozenClassifier& old,
                         std::size_t count, Rng& rng, std::size_t first_index = 0);

/// Drops confidence <= theta, keeps the top_k most confident per class and
/// orders the result by confidence descending, generation index ascending.
ScoredBatch filter_replay(const ScoredBatch& scored, const ReplayFilter& filter);

/// Generates in rounds until every old class holds min(per_class_target,
/// top_k) filtered samples or the attempt budget is spent.
ExemplarStore replay_from_generator(const GeneratorNet& generator, const FrozenClassifier& old,
                                    const ReplayFilter& filter, std::size_t per_class_target,
                                    Rng& rng);

/// gan_train on `old_data` followed by replay_from_generator.
ExemplarStore build_gan_memory(const LabeledBatch& old_data, const FrozenClassifier& old,
                               const GanConfig& cfg, const ReplayFilter& filter,
                               std::size_t per_class_target, Rng& rng);

}  // namespace incgan
