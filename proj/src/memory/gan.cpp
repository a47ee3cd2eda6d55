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

#include "incgan/gan.hpp"

#include <cmath>
#include <string>

#include "incgan/errors.hpp"
#include "incgan/ops.hpp"
#include "incgan/optim.hpp"

namespace incgan {

void GanConfig::validate() const {
  if (noise_dim == 0) throw ContractError("noise_dim must be positive");
  if (critic_iterations == 0) throw ContractError("critic_iterations must be positive");
  if (!(clip > 0.0)) throw ContractError("clip must be positive");
  if (batch_size == 0) throw ContractError("batch_size must be positive");
  if (!(critic_learning_rate > 0.0) || !(generator_learning_rate > 0.0)) {
    throw ContractError("GAN learning rates must be positive");
  }
}

Tensor critic_loss(const CriticNet& critic, const Tensor& real, const Tensor& fake) {
  return sub(mean(critic.forward(fake)), mean(critic.forward(real)));
}

Tensor generator_loss(const CriticNet& critic, const GeneratorNet& generator, const Tensor& noise) {
  return scale(mean(critic.forward(generator.forward_standardized(noise))), -1.0);
}

namespace {

struct Standardizer {
  std::vector<double> shift;
  std::vector<double> scale;
};

Standardizer fit_standardizer(const Tensor& x) {
  const std::size_t n = x.rows(), d = x.cols();
  Standardizer s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) s.shift[j] += x.at(i, j);
  }
  for (double& m : s.shift) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = x.at(i, j) - s.shift[j];
      s.scale[j] += diff * diff;
    }
  }
  for (double& v : s.scale) {
    v = std::sqrt(v / static_cast<double>(n));
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

Tensor sample_rows(const Tensor& data, std::size_t count, Rng& rng) {
  const std::size_t d = data.cols();
  std::vector<double> out(count * d);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = rng.index(data.rows());
    std::copy_n(data.values().data() + r * d, d, out.data() + i * d);
  }
  return Tensor::from({count, d}, std::move(out));
}

void check_finite(const Tensor& loss, const char* what, std::size_t iteration) {
  if (!std::isfinite(loss.item())) {
    throw TrainingError(std::string(what) + " loss diverged at iteration " + std::to_string(iteration));
  }
}

}  // namespace

GanPair gan_train(const LabeledBatch& old_data, const GanConfig& cfg, Rng& rng,
                  const CriticObserver& observer) {
  cfg.validate();
  if (old_data.is_empty()) throw ContractError("gan_train: old data is empty");
  const std::size_t d = old_data.dim();

  const Standardizer st = fit_standardizer(old_data.inputs);
  Tensor real_data = old_data.inputs.detach();
  {
    auto v = real_data.mutable_values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] - st.shift[i % d]) / st.scale[i % d];
  }

  GanPair pair{GeneratorNet(cfg.noise_dim, cfg.hidden, d, rng), CriticNet(d, cfg.hidden, rng)};
  pair.generator.set_output_affine(st.shift, st.scale);
  pair.critic.clip(cfg.clip);

  RmsPropOptimizer critic_opt(pair.critic.parameters(), {cfg.critic_learning_rate});
  RmsPropOptimizer generator_opt(pair.generator.parameters(), {cfg.generator_learning_rate});

  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    for (std::size_t c = 0; c < cfg.critic_iterations; ++c) {
      const Tensor real = sample_rows(real_data, cfg.batch_size, rng);
      Tensor fake;
      {
        NoGradGuard guard;
        fake = pair.generator.forward_standardized(pair.generator.sample_noise(cfg.batch_size, rng));
      }
      const Tensor loss = critic_loss(pair.critic, real, fake);
      check_finite(loss, "critic", it);
      loss.backward();
      critic_opt.step();
      pair.critic.clip(cfg.clip);
      if (observer) observer(pair.critic, it);
    }
    const Tensor loss = generator_loss(pair.critic, pair.generator, pair.generator.sample_noise(cfg.batch_size, rng));
    check_finite(loss, "generator", it);
    loss.backward();
    generator_opt.step();
    zero_grad(pair.critic.parameters());
  }
  return pair;
}

}  // namespace incgan
