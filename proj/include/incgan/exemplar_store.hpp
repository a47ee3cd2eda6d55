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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "incgan/batch.hpp"

namespace incgan {

struct ExemplarBudget {
  std::size_t total_capacity = 2000;
  /// Number of classes sharing the capacity; unset means the classes being
  /// selected from.
  std::optional<std::size_t> shared_by;

  /// floor(total_capacity / (shared_by or class_count)).
  std::size_t per_class_quota(std::size_t class_count) const;
};

// Confidence filter for generated samples: keep max-probability > theta, at
// most top_k per class. max_attempts bounds the number of generated samples;
// unset means 200 x the per-class target.
struct ReplayFilter {
  double theta = 0.95;
  std::size_t top_k = 50;
  std::optional<std::size_t> max_attempts;

  void validate() const;
};

struct StoreManifest {
  SampleSource source = SampleSource::OldExemplar;
  std::string strategy;            // random | herding | gan
  std::vector<int> class_ids;      // classes the store was asked to cover
  std::vector<std::size_t> counts; // parallel to class_ids
  std::size_t capacity = 0;
  std::size_t per_class_quota = 0;
  std::optional<ReplayFilter> filter;
  std::size_t attempts = 0;
  std::vector<int> underfilled;
  std::vector<std::string> warnings;
};

// Labeled old-class samples grouped by ascending class, each class in
// preference order (selection order for real exemplars, confidence order for
// generated ones), so trimming keeps a prefix.
struct ExemplarStore {
  LabeledBatch samples;
  std::vector<double> confidence;  // empty for real exemplars
  StoreManifest manifest;

  std::size_t size() const { return samples.size(); }
  std::size_t count(int label) const;

  /// Keeps the first `quota` samples of every class and refreshes counts.
  void trim_per_class(std::size_t quota);
  /// Appends `other`; samples of a class already present go after the
  /// existing ones.
  void merge(const ExemplarStore& other);
  /// Recomputes manifest counts from the samples.
  void refresh_counts();
};

/// Writes manifest.json, samples.f64 and labels.i32 into `dir`.
void save_store(const ExemplarStore& store, const std::filesystem::path& dir);
ExemplarStore load_store(const std::filesystem::path& dir);

}  // namespace incgan
