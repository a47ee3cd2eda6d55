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

#include "incgan/replay.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "incgan/errors.hpp"
#include "incgan/ops.hpp"

namespace incgan {

namespace {

constexpr std::size_t kAttemptsPerTarget = 200;
constexpr std::size_t kMinRound = 256;

ScoredBatch take(const ScoredBatch& scored, const std::vector<std::size_t>& rows) {
  ScoredBatch out;
  out.batch = scored.batch.subset(rows);
  for (auto r : rows) {
    out.confidence.push_back(scored.confidence[r]);
    out.generation_index.push_back(scored.generation_index[r]);
  }
  return out;
}

ScoredBatch append(const ScoredBatch& a, const ScoredBatch& b) {
  ScoredBatch out;
  out.batch = concat(a.batch, b.batch);
  out.confidence = a.confidence;
  out.confidence.insert(out.confidence.end(), b.confidence.begin(), b.confidence.end());
  out.generation_index = a.generation_index;
  out.generation_index.insert(out.generation_index.end(), b.generation_index.begin(),
                              b.generation_index.end());
  return out;
}

}  // namespace

ScoredBatch label_samples(const Tensor& samples, const FrozenClassifier& old,
                          std::size_t first_index) {
  if (old.class_count() == 0) throw ContractError("pseudo-labeling needs at least one class");
  NoGradGuard guard;
  const Tensor probs = softmax(old.forward(samples), 1.0);
  const std::size_t r = probs.rows(), k = probs.cols();
  ScoredBatch out;
  std::vector<int> labels(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (probs.at(i, j) > probs.at(i, best)) best = j;
    }
    labels[i] = static_cast<int>(best);
    out.confidence.push_back(probs.at(i, best));
    out.generation_index.push_back(first_index + i);
  }
  out.batch = LabeledBatch::make(samples.detach(), std::move(labels), SampleSource::GanReplay);
  return out;
}

ScoredBatch pseudo_label(const GeneratorNet& generator, const FrozenClassifier& old,
                         std::size_t count, Rng& rng, std::size_t first_index) {
  const Tensor samples = generator.forward(generator.sample_noise(count, rng));
  return label_samples(samples, old, first_index);
}

ScoredBatch filter_replay(const ScoredBatch& scored, const ReplayFilter& filter) {
  filter.validate();
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored.confidence[a] != scored.confidence[b]) return scored.confidence[a] > scored.confidence[b];
    return scored.generation_index[a] < scored.generation_index[b];
  });
  std::map<int, std::size_t> kept;
  std::vector<std::size_t> rows;
  for (auto i : order) {
    if (!(scored.confidence[i] > filter.theta)) continue;
    if (kept[scored.batch.labels[i]]++ < filter.top_k) rows.push_back(i);
  }
  ScoredBatch out = take(scored, rows);
  if (out.batch.is_empty()) out.batch = LabeledBatch::empty(scored.batch.dim(), SampleSource::GanReplay);
  out.batch.source = SampleSource::GanReplay;
  return out;
}

ExemplarStore replay_from_generator(const GeneratorNet& generator, const FrozenClassifier& old,
                                    const ReplayFilter& filter, std::size_t per_class_target,
                                    Rng& rng) {
  filter.validate();
  if (per_class_target == 0) throw ContractError("per_class_target must be positive");
  const std::size_t n = old.class_count();
  const std::size_t want = std::min(per_class_target, filter.top_k);
  const std::size_t budget = filter.max_attempts.value_or(kAttemptsPerTarget * per_class_target);
  const std::size_t round = std::max(kMinRound, want * n);

  ScoredBatch pool{LabeledBatch::empty(generator.data_dim(), SampleSource::GanReplay), {}, {}};
  std::size_t attempts = 0;
  auto filled = [&](const ScoredBatch& kept) {
    std::vector<std::size_t> counts(n, 0);
    for (int label : kept.batch.labels) ++counts[static_cast<std::size_t>(label)];
    return std::all_of(counts.begin(), counts.end(), [&](std::size_t c) { return c >= want; });
  };
  ScoredBatch kept = filter_replay(pool, filter);
  while (attempts < budget && !filled(kept)) {
    const std::size_t count = std::min(round, budget - attempts);
    const ScoredBatch fresh = pseudo_label(generator, old, count, rng, attempts);
    attempts += count;
    // Only survivors of the threshold can ever be retained.
    std::vector<std::size_t> pass;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (fresh.confidence[i] > filter.theta) pass.push_back(i);
    }
    pool = append(pool, take(fresh, pass));
    kept = filter_replay(pool, filter);
  }

  // Group by class, each class in confidence order, capped at the target.
  std::vector<std::size_t> rows(kept.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    return kept.batch.labels[a] < kept.batch.labels[b];
  });
  std::map<int, std::size_t> per_class;
  std::vector<std::size_t> final_rows;
  for (auto r : rows) {
    if (per_class[kept.batch.labels[r]]++ < want) final_rows.push_back(r);
  }
  const ScoredBatch chosen = take(kept, final_rows);

  ExemplarStore store;
  store.samples = chosen.batch.is_empty() ? LabeledBatch::empty(generator.data_dim()) : chosen.batch;
  store.samples.source = SampleSource::GanReplay;
  store.confidence = chosen.confidence;
  auto& m = store.manifest;
  m.source = SampleSource::GanReplay;
  m.strategy = "gan";
  m.per_class_quota = want;
  m.capacity = want * n;
  m.filter = filter;
  m.attempts = attempts;
  for (std::size_t c = 0; c < n; ++c) m.class_ids.push_back(static_cast<int>(c));
  store.refresh_counts();
  for (std::size_t c = 0; c < n; ++c) {
    if (m.counts[c] < want) {
      m.underfilled.push_back(static_cast<int>(c));
      if (m.counts[c] == 0) {
        m.warnings.push_back("class " + std::to_string(c) + " received no samples after " +
                             std::to_string(attempts) + " attempts");
      }
    }
  }
  return store;
}

ExemplarStore build_gan_memory(const LabeledBatch& old_data, const FrozenClassifier& old,
                               const GanConfig& cfg, const ReplayFilter& filter,
                               std::size_t per_class_target, Rng& rng) {
  const GanPair pair = gan_train(old_data, cfg, rng);
  return replay_from_generator(pair.generator, old, filter, per_class_target, rng);
}

}  // namespace incgan
