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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incgan/datasets.hpp"
#include "incgan/exemplar_store.hpp"
#include "incgan/gan.hpp"
#include "incgan/metrics.hpp"
#include "incgan/models.hpp"
#include "incgan/optim.hpp"
#include "incgan/training.hpp"

namespace incgan {

enum class Method { Finetune, Lwf, OursReal, OursGan };
enum class Selection { Random, Herding };

std::string to_string(Method method);
Method parse_method(std::string_view text);
std::string to_string(Selection selection);
Selection parse_selection(std::string_view text);

// Class-incremental run: classes arrive in `parts` equal groups in a seeded
// random order.
struct ProtocolConfig {
  std::size_t total_classes = 8;
  std::size_t parts = 2;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> class_order_seed;  // defaults to seed
  Method method = Method::OursReal;

  std::optional<double> lambda;  // unset: 0 finetune, 0.5 ours-real, 0.9 lwf / ours-gan
  std::optional<double> beta;    // unset: estimated on held-out validation data
  double temperature = 2.0;

  std::size_t memory_size = 40;
  Selection selection = Selection::Random;
  ReplayFilter replay{0.5, 50, std::nullopt};
  GanConfig gan;
  std::optional<std::size_t> validation_per_class;  // unset: 5 real, 10 gan

  std::vector<std::size_t> hidden{64, 64};
  SgdConfig sgd{.learning_rate = 0.01};
  TrainSchedule schedule{.epochs = 15};

  void validate() const;
  std::size_t classes_per_part() const { return total_classes / parts; }
  double effective_lambda() const;
  std::size_t effective_validation_per_class() const;
  bool uses_memory() const { return method == Method::OursReal || method == Method::OursGan; }
  bool estimates_bias() const;
};

struct MemorySummary {
  std::string strategy = "none";
  std::size_t size = 0;             // samples used for training
  std::size_t per_class_quota = 0;
  std::size_t attempts = 0;
  std::vector<int> underfilled;

  bool operator==(const MemorySummary&) const = default;
};

struct IncrementResult {
  std::size_t increment = 0;
  std::size_t classes_seen = 0;
  double top1 = 0.0;
  std::optional<double> validation_top1;
  double beta = 1.0;
  double lambda = 0.0;
  double seconds = 0.0;
  std::vector<double> per_class_accuracy;
  std::vector<std::size_t> class_test_counts;
  ConfusionMatrix confusion;
  MemorySummary memory;
};

struct ExperimentReport {
  std::string method;
  std::uint64_t seed = 0;
  std::size_t total_classes = 0;
  std::size_t parts = 0;
  std::vector<int> class_order;  // class_order[k] = dataset class at position k
  std::vector<IncrementResult> increments;
};

/// Equality of everything except wall-clock time and the method label.
bool same_results(const ExperimentReport& a, const ExperimentReport& b);

struct ProtocolResult {
  ExperimentReport report;
  ClassifierNet network;     // after the last increment
  LabeledBatch validation;   // last increment's held-out set, possibly empty
  LabeledBatch test;         // cumulative test set of the last increment
  std::size_t old_classes = 0;
};

/// Runs every increment; labels inside the result are positions in the class
/// order. Errors carry the increment index.
ProtocolResult run_protocol_detailed(const ProtocolConfig& cfg, const Dataset& data);
ExperimentReport run_protocol(const ProtocolConfig& cfg, const Dataset& data);
ExperimentReport run_protocol(const ProtocolConfig& cfg, const DatasetSpec& spec);

/// Per class, holds out `per_class` random rows, or ceil(half) of a class
/// that has no more than `per_class`; returns {kept, held_out}.
std::pair<LabeledBatch, LabeledBatch> hold_out(const LabeledBatch& data, std::size_t per_class,
                                               Rng& rng);

}  // namespace incgan
