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

#include "incgan/exemplar_store.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include <json.hpp>

#include "incgan/binary_io.hpp"
#include "incgan/errors.hpp"

namespace incgan {

using nlohmann::json;

std::size_t ExemplarBudget::per_class_quota(std::size_t class_count) const {
  const std::size_t classes = shared_by.value_or(class_count);
  if (classes == 0) throw ContractError("quota over zero classes");
  return total_capacity / classes;
}

void ReplayFilter::validate() const {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw ContractError("theta must lie in [0, 1), got " + std::to_string(theta));
  }
  if (top_k == 0) throw ContractError("top_k must be positive");
}

std::size_t ExemplarStore::count(int label) const {
  return static_cast<std::size_t>(std::count(samples.labels.begin(), samples.labels.end(), label));
}

void ExemplarStore::trim_per_class(std::size_t quota) {
  std::map<int, std::size_t> seen;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (seen[samples.labels[i]]++ < quota) keep.push_back(i);
  }
  std::vector<double> conf;
  if (!confidence.empty()) {
    for (auto i : keep) conf.push_back(confidence[i]);
  }
  samples = samples.subset(keep);
  confidence = std::move(conf);
  manifest.per_class_quota = quota;
  refresh_counts();
}

void ExemplarStore::merge(const ExemplarStore& other) {
  const bool scored = !confidence.empty() || !other.confidence.empty();
  if (scored && confidence.size() != size()) confidence.assign(size(), 1.0);
  const SampleSource source = samples.source;
  LabeledBatch merged = concat(samples, other.samples);
  merged.source = source;
  if (scored) {
    if (other.confidence.size() == other.size()) {
      confidence.insert(confidence.end(), other.confidence.begin(), other.confidence.end());
    } else {
      confidence.insert(confidence.end(), other.size(), 1.0);
    }
  }
  // Regroup by class, preserving each class's internal order.
  std::vector<std::size_t> order(merged.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return merged.labels[a] < merged.labels[b];
  });
  samples = merged.subset(order);
  samples.source = source;
  if (scored) {
    std::vector<double> conf(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) conf[i] = confidence[order[i]];
    confidence = std::move(conf);
  }
  for (int c : other.manifest.class_ids) {
    if (std::find(manifest.class_ids.begin(), manifest.class_ids.end(), c) == manifest.class_ids.end()) {
      manifest.class_ids.push_back(c);
    }
  }
  std::sort(manifest.class_ids.begin(), manifest.class_ids.end());
  manifest.attempts += other.manifest.attempts;
  manifest.underfilled.insert(manifest.underfilled.end(), other.manifest.underfilled.begin(),
                              other.manifest.underfilled.end());
  manifest.warnings.insert(manifest.warnings.end(), other.manifest.warnings.begin(),
                           other.manifest.warnings.end());
  refresh_counts();
}

void ExemplarStore::refresh_counts() {
  for (int c : samples.classes()) {
    if (std::find(manifest.class_ids.begin(), manifest.class_ids.end(), c) == manifest.class_ids.end()) {
      manifest.class_ids.push_back(c);
    }
  }
  std::sort(manifest.class_ids.begin(), manifest.class_ids.end());
  manifest.counts.clear();
  for (int c : manifest.class_ids) manifest.counts.push_back(count(c));
}

namespace {

json manifest_to_json(const ExemplarStore& store) {
  const auto& m = store.manifest;
  json j = {{"format", "incgan-exemplar-store"},
            {"version", 1},
            {"source", to_string(m.source)},
            {"strategy", m.strategy},
            {"class_ids", m.class_ids},
            {"counts", m.counts},
            {"capacity", m.capacity},
            {"per_class_quota", m.per_class_quota},
            {"attempts", m.attempts},
            {"underfilled", m.underfilled},
            {"warnings", m.warnings},
            {"sample_count", store.size()},
            {"dim", store.samples.dim()},
            {"samples_blob", "samples.f64"},
            {"labels_blob", "labels.i32"},
            {"dtype", "float64"},
            {"label_dtype", "int32"},
            {"byte_order", "little"},
            {"confidence", store.confidence}};
  if (m.filter) {
    j["filter"] = {{"theta", m.filter->theta}, {"top_k", m.filter->top_k}};
    if (m.filter->max_attempts) j["filter"]["max_attempts"] = *m.filter->max_attempts;
  } else {
    j["filter"] = nullptr;
  }
  return j;
}

}  // namespace

void save_store(const ExemplarStore& store, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_f64_le(dir / "samples.f64", store.samples.inputs.values());
  std::vector<std::int32_t> labels(store.samples.labels.begin(), store.samples.labels.end());
  write_i32_le(dir / "labels.i32", labels);
  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << manifest_to_json(store).dump(2) << '\n';
}

ExemplarStore load_store(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IoError("cannot open " + (dir / "manifest.json").string());
  try {
    const json j = json::parse(in);
    if (j.at("format") != "incgan-exemplar-store") throw FormatError("not an exemplar store manifest");
    ExemplarStore store;
    const auto dim = j.at("dim").get<std::size_t>();
    const auto n = j.at("sample_count").get<std::size_t>();
    auto values = read_f64_le(dir / j.at("samples_blob").get<std::string>());
    auto labels = read_i32_le(dir / j.at("labels_blob").get<std::string>());
    if (values.size() != n * dim || labels.size() != n) {
      throw FormatError("store blobs hold " + std::to_string(values.size()) + " values and " +
                        std::to_string(labels.size()) + " labels, manifest expects " +
                        std::to_string(n) + " x " + std::to_string(dim));
    }
    auto& m = store.manifest;
    m.source = parse_sample_source(j.at("source").get<std::string>());
    store.samples = LabeledBatch::make(Tensor::from({n, dim}, std::move(values)),
                                       std::vector<int>(labels.begin(), labels.end()), m.source);
    m.strategy = j.at("strategy").get<std::string>();
    m.class_ids = j.at("class_ids").get<std::vector<int>>();
    m.counts = j.at("counts").get<std::vector<std::size_t>>();
    m.capacity = j.at("capacity").get<std::size_t>();
    m.per_class_quota = j.at("per_class_quota").get<std::size_t>();
    m.attempts = j.at("attempts").get<std::size_t>();
    m.underfilled = j.at("underfilled").get<std::vector<int>>();
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (!j.at("filter").is_null()) {
      ReplayFilter f;
      f.theta = j["filter"].at("theta").get<double>();
      f.top_k = j["filter"].at("top_k").get<std::size_t>();
      if (j["filter"].contains("max_attempts")) f.max_attempts = j["filter"]["max_attempts"].get<std::size_t>();
      m.filter = f;
    }
    store.confidence = j.at("confidence").get<std::vector<double>>();
    return store;
  } catch (const json::exception& e) {
    throw FormatError(std::string("store manifest: ") + e.what());
  }
}

}  // namespace incgan
