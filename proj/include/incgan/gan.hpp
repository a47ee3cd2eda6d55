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
#include <functional>
#include <vector>

#include "incgan/batch.hpp"
#include "incgan/models.hpp"
#include "incgan/rng.hpp"

namespace incgan {

// Weight-clipping Wasserstein GAN settings.
struct GanConfig {
  std::size_t noise_dim = 8;
  std::vector<std::size_t> hidden{64, 64};
  std::size_t critic_iterations = 5;
  double clip = 0.01;
  double critic_learning_rate = 5e-5;
  double generator_learning_rate = 5e-5;
  std::size_t iterations = 2000;  // generator updates
  std::size_t batch_size = 64;

  void validate() const;
};

struct GanPair {
  GeneratorNet generator;
  CriticNet critic;
};

/// Called after every critic update with the clipped critic and the
/// generator iteration it belongs to.
using CriticObserver = std::function<void(const CriticNet&, std::size_t)>;

/// -(mean critic(real) - mean critic(fake)); minimized by the critic.
Tensor critic_loss(const CriticNet& critic, const Tensor& real, const Tensor& fake);
/// -mean critic(G(noise)) on standardized generator output; minimized by the
/// generator.
Tensor generator_loss(const CriticNet& critic, const GeneratorNet& generator, const Tensor& noise);

/// Unconditional WGAN on every sample of `old_data` (labels ignored). The
/// generator learns standardized data and carries the affine back to data
/// units. Throws TrainingError on a non-finite loss.
GanPair gan_train(const LabeledBatch& old_data, const GanConfig& cfg, Rng& rng,
                  const CriticObserver& observer = {});

}  // namespace incgan
