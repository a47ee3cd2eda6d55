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

#include "incgan/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "incgan/bias.hpp"
#include "incgan/errors.hpp"
#include "incgan/exemplars.hpp"
#include "incgan/replay.hpp"

namespace incgan {

std::string to_string(Method method) {
  switch (method) {
    case Method::Finetune: return "finetune";
    case Method::Lwf: return "lwf";
    case Method::OursReal: return "ours-real";
    case Method::OursGan: return "ours-gan";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "finetune") return Method::Finetune;
  if (text == "lwf") return Method::Lwf;
  if (text == "ours-real") return Method::OursReal;
  if (text == "ours-gan") return Method::OursGan;
  throw ContractError("unknown method '" + std::string(text) + "'");
}

std::string to_string(Selection selection) {
  return selection == Selection::Random ? "random" : "herding";
}

Selection parse_selection(std::string_view text) {
  if (text == "random") return Selection::Random;
  if (text == "herding") return Selection::Herding;
  throw ContractError("unknown selection '" + std::string(text) + "'");
}

void ProtocolConfig::validate() const {
  if (total_classes == 0 || parts == 0) throw ContractError("classes and parts must be positive");
  if (total_classes % parts != 0) {
    throw ContractError(std::to_string(parts) + " parts do not divide " +
                        std::to_string(total_classes) + " classes");
  }
  if (lambda && !(*lambda >= 0.0 && *lambda <= 1.0)) throw ContractError("lambda must lie in [0, 1]");
  if (beta && !(*beta >= 0.0 && *beta <= 1.0)) throw ContractError("beta must lie in [0, 1]");
  if (method == Method::Lwf && lambda && *lambda == 0.0) {
    throw ContractError("lwf needs lambda > 0");
  }
  sgd.validate();
  schedule.validate();
  replay.validate();
  if (method == Method::OursGan) gan.validate();
}

double ProtocolConfig::effective_lambda() const {
  if (method == Method::Finetune) return 0.0;
  if (lambda) return *lambda;
  return method == Method::OursReal ? 0.5 : 0.9;
}

std::size_t ProtocolConfig::effective_validation_per_class() const {
  if (validation_per_class) return *validation_per_class;
  return method == Method::OursGan ? 10 : 5;
}

bool ProtocolConfig::estimates_bias() const { return uses_memory() && !beta.has_value(); }

bool same_results(const ExperimentReport& a, const ExperimentReport& b) {
  if (a.seed != b.seed || a.class_order != b.class_order || a.increments.size() != b.increments.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.increments.size(); ++i) {
    const auto& x = a.increments[i];
    const auto& y = b.increments[i];
    if (x.increment != y.increment || x.classes_seen != y.classes_seen || x.top1 != y.top1 ||
        x.validation_top1 != y.validation_top1 || x.beta != y.beta || x.lambda != y.lambda ||
        x.per_class_accuracy != y.per_class_accuracy || x.class_test_counts != y.class_test_counts ||
        !(x.confusion == y.confusion) || x.memory.size != y.memory.size) {
      return false;
    }
  }
  return true;
}

std::pair<LabeledBatch, LabeledBatch> hold_out(const LabeledBatch& data, std::size_t per_class,
                                               Rng& rng) {
  std::vector<std::size_t> kept, held;
  for (int c : data.classes()) {
    auto rows = data.rows_of(c);
    rng.shuffle(std::span<std::size_t>(rows));
    const std::size_t h = rows.size() > per_class ? per_class : (rows.size() + 1) / 2;
    held.insert(held.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(h));
    kept.insert(kept.end(), rows.begin() + static_cast<std::ptrdiff_t>(h), rows.end());
  }
  std::sort(kept.begin(), kept.end());
  std::sort(held.begin(), held.end());
  return {data.subset(kept), data.subset(held)};
}

namespace {

// Rows whose label lies in [first, first + count).
LabeledBatch label_range(const LabeledBatch& data, int first, int count) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.labels[i] >= first && data.labels[i] < first + count) rows.push_back(i);
  }
  return data.subset(rows);
}

LabeledBatch relabel(const LabeledBatch& data, const std::vector<int>& position_of) {
  LabeledBatch out{data.inputs.clone(), data.labels, data.source};
  for (int& label : out.labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= position_of.size()) {
      throw FormatError("dataset label " + std::to_string(label) + " outside the configured " +
                        std::to_string(position_of.size()) + " classes");
    }
    label = position_of[static_cast<std::size_t>(label)];
  }
  return out;
}

template <typename Fn>
auto with_increment(std::size_t t, Fn&& fn) {
  const std::string where = "increment " + std::to_string(t) + ": ";
  try {
    return fn();
  } catch (const TrainingError& e) {
    throw TrainingError(where + e.what());
  } catch (const FormatError& e) {
    throw FormatError(where + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(where + e.what());
  } catch (const NumericError& e) {
    throw NumericError(where + e.what());
  } catch (const ContractError& e) {
    throw ContractError(where + e.what());
  }
}

// Old-class memory carried between increments.
class MemoryState {
 public:
  explicit MemoryState(const ProtocolConfig& cfg) : cfg_(cfg) {}

  const ExemplarStore& store() const { return store_; }

  // Adds the classes of the part just learned and rebalances the budget over
  // all `seen` classes.
  void update(const ClassifierNet& net, const LabeledBatch& part_data, std::size_t seen, Rng& rng) {
    const ExemplarBudget budget{cfg_.memory_size, seen};
    const std::size_t quota = budget.per_class_quota(seen);
    // generated memory also supplies the old-class validation rows
    const std::size_t keep = quota + (cfg_.method == Method::OursGan && cfg_.estimates_bias()
                                          ? cfg_.effective_validation_per_class()
                                          : 0);
    ExemplarStore fresh;
    if (quota > 0) {
      if (cfg_.method == Method::OursGan) {
        fresh = build_gan_memory(part_data, snapshot(net), cfg_.gan, cfg_.replay, keep, rng);
      } else if (cfg_.selection == Selection::Random) {
        fresh = select_random(part_data, budget, rng);
      } else {
        const Tensor features = l2_normalize_rows(snapshot(net).features(part_data.inputs));
        fresh = select_herding(part_data, features, budget);
      }
    }
    if (store_.size() == 0) {
      store_ = std::move(fresh);
    } else {
      store_.trim_per_class(keep);
      store_.merge(fresh);
    }
    store_.trim_per_class(keep);
    store_.manifest.capacity = cfg_.memory_size;
  }

  MemorySummary summary(std::size_t used) const {
    MemorySummary s;
    s.strategy = store_.manifest.strategy.empty() ? "none" : store_.manifest.strategy;
    s.size = used;
    s.per_class_quota = store_.manifest.per_class_quota;
    s.attempts = store_.manifest.attempts;
    s.underfilled = store_.manifest.underfilled;
    return s;
  }

 private:
  const ProtocolConfig& cfg_;
  ExemplarStore store_;
};

IncrementResult evaluate(const ClassifierNet& net, const BiasCorrection& bc, const LabeledBatch& test,
                         std::size_t classes_seen) {
  IncrementResult r;
  r.classes_seen = classes_seen;
  const auto predictions = predict(net, bc, test.inputs);
  r.confusion = confusion_matrix(predictions, test.labels, classes_seen);
  r.top1 = r.confusion.accuracy();
  r.per_class_accuracy = r.confusion.per_class_accuracy();
  for (std::size_t c = 0; c < classes_seen; ++c) r.class_test_counts.push_back(r.confusion.row_sum(c));
  r.beta = bc.beta;
  return r;
}

}  // namespace

ProtocolResult run_protocol_detailed(const ProtocolConfig& cfg, const Dataset& data) {
  cfg.validate();
  if (data.classes != cfg.total_classes) {
    throw ContractError("dataset has " + std::to_string(data.classes) + " classes, protocol expects " +
                        std::to_string(cfg.total_classes));
  }
  const std::size_t per_part = cfg.classes_per_part();

  ProtocolResult result;
  ExperimentReport& report = result.report;
  report.method = to_string(cfg.method);
  report.seed = cfg.seed;
  report.total_classes = cfg.total_classes;
  report.parts = cfg.parts;

  std::vector<int> order(cfg.total_classes);
  std::iota(order.begin(), order.end(), 0);
  Rng order_rng(cfg.class_order_seed.value_or(cfg.seed));
  order_rng.shuffle(std::span<int>(order));
  report.class_order = order;
  std::vector<int> position_of(cfg.total_classes);
  for (std::size_t k = 0; k < order.size(); ++k) position_of[static_cast<std::size_t>(order[k])] = static_cast<int>(k);

  const LabeledBatch train = relabel(data.train, position_of);
  const LabeledBatch test = relabel(data.test, position_of);

  Rng master(cfg.seed);
  MemoryState memory(cfg);
  ClassifierNet net;

  for (std::size_t t = 0; t < cfg.parts; ++t) {
    // Every branch forks the same streams so methods share their seeds.
    Rng inc_rng = master.fork();
    Rng init_rng = inc_rng.fork();
    Rng holdout_rng = inc_rng.fork();
    Rng train_rng = inc_rng.fork();
    Rng memory_rng = inc_rng.fork();

    const auto n = static_cast<int>(t * per_part);
    const auto m = static_cast<int>(per_part);
    const std::size_t seen = t * per_part + per_part;
    const LabeledBatch part_train = label_range(train, n, m);
    const LabeledBatch cumulative_test = label_range(test, 0, n + m);

    with_increment(t, [&] {
      const auto started = std::chrono::steady_clock::now();
      IncrementResult inc;
      if (t == 0) {
        std::vector<std::size_t> widths{train.dim()};
        widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
        widths.push_back(per_part);
        net = ClassifierNet(widths, init_rng.next_u64());
        train_supervised(net, part_train, cfg.sgd, cfg.schedule, train_rng);
        inc = evaluate(net, {1.0, 0, per_part}, cumulative_test, seen);
        inc.lambda = 0.0;
        result.validation = LabeledBatch::empty(train.dim());
        result.old_classes = 0;
      } else {
        const double lambda = cfg.effective_lambda();
        const FrozenClassifier old = snapshot(net);
        ClassifierNet expanded = expand_head(net, per_part, init_rng);

        LabeledBatch new_train = part_train;
        LabeledBatch memory_train = LabeledBatch::empty(train.dim(), SampleSource::OldExemplar);
        LabeledBatch validation = LabeledBatch::empty(train.dim());
        if (cfg.uses_memory() && memory.store().size() > 0) {
          memory_train = memory.store().samples;
        }
        if (cfg.estimates_bias()) {
          const std::size_t h = cfg.effective_validation_per_class();
          auto [mem_keep, mem_val] = hold_out(memory_train, h, holdout_rng);
          auto [new_keep, new_val] = hold_out(new_train, h, holdout_rng);
          memory_train = std::move(mem_keep);
          new_train = std::move(new_keep);
          validation = concat(mem_val, new_val);
        }
        const LossConfig loss{lambda, cfg.temperature, static_cast<std::size_t>(n), per_part};
        net = incremental_train(old, std::move(expanded), new_train, memory_train, loss, cfg.sgd,
                                cfg.schedule, train_rng);

        BiasCorrection bc{cfg.beta.value_or(1.0), static_cast<std::size_t>(n), per_part};
        if (cfg.estimates_bias() && !validation.is_empty()) {
          bc = estimate_bias(net, validation, default_beta_grid(), static_cast<std::size_t>(n));
        }
        inc = IncrementResult{evaluate(net, bc, cumulative_test, seen)};
        inc.memory = cfg.uses_memory() ? memory.summary(memory_train.size()) : MemorySummary{};
        inc.lambda = lambda;
        if (!validation.is_empty()) {
          inc.validation_top1 = accuracy(predict(net, bc, validation.inputs), validation.labels);
        }
        result.validation = validation;
        result.old_classes = static_cast<std::size_t>(n);
      }
      inc.increment = t;
      inc.classes_seen = seen;
      if (cfg.uses_memory() && t + 1 < cfg.parts) memory.update(net, part_train, seen, memory_rng);
      inc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      report.increments.push_back(std::move(inc));
    });
    result.test = cumulative_test;
  }
  result.network = net;
  return result;
}

ExperimentReport run_protocol(const ProtocolConfig& cfg, const Dataset& data) {
  return run_protocol_detailed(cfg, data).report;
}

ExperimentReport run_protocol(const ProtocolConfig& cfg, const DatasetSpec& spec) {
  return run_protocol(cfg, load_dataset(spec));
}

}  // namespace incgan
