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

#include "incgan/exemplars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "incgan/errors.hpp"

namespace incgan {

namespace {

// Features are unit rows, so squared distances are O(1); closer candidates
// than this count as ties and the lower index wins.
constexpr double kTieTolerance = 1e-12;

ExemplarStore assemble(const LabeledBatch& data, const std::vector<std::size_t>& rows,
                       std::string strategy, const ExemplarBudget& budget, std::size_t quota) {
  ExemplarStore store;
  store.samples = data.subset(rows);
  store.samples.source = SampleSource::OldExemplar;
  store.manifest.source = SampleSource::OldExemplar;
  store.manifest.strategy = std::move(strategy);
  store.manifest.capacity = budget.total_capacity;
  store.manifest.per_class_quota = quota;
  return store;
}

}  // namespace

ExemplarStore select_random(const LabeledBatch& data, const ExemplarBudget& budget, Rng& rng) {
  if (data.is_empty()) throw ContractError("select_random: data is empty");
  const auto classes = data.classes();
  const std::size_t quota = budget.per_class_quota(classes.size());
  std::vector<std::size_t> rows;
  for (int c : classes) {
    auto members = data.rows_of(c);
    rng.shuffle(std::span<std::size_t>(members));
    members.resize(std::min(quota, members.size()));
    rows.insert(rows.end(), members.begin(), members.end());
  }
  ExemplarStore store = assemble(data, rows, "random", budget, quota);
  store.manifest.class_ids = classes;
  store.refresh_counts();
  return store;
}

Tensor l2_normalize_rows(const Tensor& x) {
  Tensor out = x.detach();
  const std::size_t r = out.rows(), c = out.cols();
  auto v = out.mutable_values();
  for (std::size_t i = 0; i < r; ++i) {
    double norm = 0.0;
    for (std::size_t j = 0; j < c; ++j) norm += v[i * c + j] * v[i * c + j];
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (std::size_t j = 0; j < c; ++j) v[i * c + j] /= norm;
    }
  }
  return out;
}

std::vector<std::size_t> herding_order(const Tensor& features, std::size_t count) {
  const std::size_t k = features.rows(), d = features.cols();
  count = std::min(count, k);
  std::vector<double> target(d, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < d; ++j) target[j] += features.at(i, j);
  }
  for (double& t : target) t /= static_cast<double>(k);

  std::vector<double> picked_sum(d, 0.0);
  std::vector<bool> taken(k, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 1; step <= count; ++step) {
    std::size_t best = k;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      if (taken[i]) continue;
      double dist = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = target[j] - (picked_sum[j] + features.at(i, j)) / static_cast<double>(step);
        dist += diff * diff;
      }
      if (dist < best_dist - kTieTolerance) {
        best_dist = dist;
        best = i;
      }
    }
    taken[best] = true;
    order.push_back(best);
    for (std::size_t j = 0; j < d; ++j) picked_sum[j] += features.at(best, j);
  }
  return order;
}

ExemplarStore select_herding(const LabeledBatch& data, const Tensor& features,
                             const ExemplarBudget& budget, std::span<const int> classes) {
  if (features.rank() != 2 || features.rows() != data.size()) {
    throw DimensionError("select_herding: features " + shape_string(features.shape()) + " for " +
                         std::to_string(data.size()) + " samples");
  }
  std::vector<int> wanted(classes.begin(), classes.end());
  if (wanted.empty()) wanted = data.classes();
  std::sort(wanted.begin(), wanted.end());
  if (wanted.empty()) throw ContractError("select_herding: no classes to cover");
  const std::size_t quota = budget.per_class_quota(wanted.size());
  const std::size_t d = features.cols();

  std::vector<std::size_t> rows;
  std::vector<std::string> warnings;
  for (int c : wanted) {
    const auto members = data.rows_of(c);
    if (members.empty()) {
      warnings.push_back("class " + std::to_string(c) + " has no samples; skipped");
      continue;
    }
    std::vector<double> f(members.size() * d);
    for (std::size_t i = 0; i < members.size(); ++i) {
      std::copy_n(features.values().data() + members[i] * d, d, f.data() + i * d);
    }
    const auto order = herding_order(Tensor::from({members.size(), d}, std::move(f)), quota);
    for (auto i : order) rows.push_back(members[i]);
  }
  ExemplarStore store = assemble(data, rows, "herding", budget, quota);
  store.manifest.class_ids = wanted;
  store.manifest.warnings = std::move(warnings);
  store.refresh_counts();
  return store;
}

}  // namespace incgan
