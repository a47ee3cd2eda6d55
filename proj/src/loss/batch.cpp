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

#include "incgan/batch.hpp"

#include <algorithm>

#include "incgan/errors.hpp"

namespace incgan {

std::string to_string(SampleSource source) {
  switch (source) {
    case SampleSource::OldExemplar: return "old-exemplar";
    case SampleSource::NewData: return "new-data";
    case SampleSource::GanReplay: return "gan-replay";
  }
  return "unknown";
}

SampleSource parse_sample_source(std::string_view text) {
  if (text == "old-exemplar") return SampleSource::OldExemplar;
  if (text == "new-data") return SampleSource::NewData;
  if (text == "gan-replay") return SampleSource::GanReplay;
  throw FormatError("unknown sample source '" + std::string(text) + "'");
}

LabeledBatch LabeledBatch::empty(std::size_t dim, SampleSource source) {
  return {Tensor::zeros({0, dim}), {}, source};
}

LabeledBatch LabeledBatch::make(Tensor inputs, std::vector<int> labels, SampleSource source) {
  if (inputs.rank() != 2 || inputs.rows() != labels.size()) {
    throw DimensionError("batch of " + std::to_string(labels.size()) + " labels with inputs " +
                         shape_string(inputs.shape()));
  }
  return {std::move(inputs), std::move(labels), source};
}

LabeledBatch LabeledBatch::subset(std::span<const std::size_t> rows) const {
  const std::size_t d = dim();
  std::vector<double> values(rows.size() * d);
  std::vector<int> picked(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= size()) throw ContractError("subset row " + std::to_string(rows[i]) + " out of range");
    std::copy_n(inputs.values().data() + rows[i] * d, d, values.data() + i * d);
    picked[i] = labels[rows[i]];
  }
  return {Tensor::from({rows.size(), d}, std::move(values)), std::move(picked), source};
}

std::vector<std::size_t> LabeledBatch::rows_of(int label) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) rows.push_back(i);
  }
  return rows;
}

std::vector<int> LabeledBatch::classes() const {
  std::vector<int> out(labels);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void LabeledBatch::require_labels_in(int first, int count, std::string_view what) const {
  for (int label : labels) {
    if (label < first || label >= first + count) {
      throw ContractError(std::string(what) + ": label " + std::to_string(label) +
                          " outside [" + std::to_string(first) + ", " +
                          std::to_string(first + count) + ")");
    }
  }
}

LabeledBatch concat(const LabeledBatch& a, const LabeledBatch& b) {
  if (a.is_empty()) return {b.inputs.clone(), b.labels, a.source};
  if (b.is_empty()) return {a.inputs.clone(), a.labels, a.source};
  if (a.dim() != b.dim()) {
    throw DimensionError("concat: dimension " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
  std::vector<double> values(a.inputs.values().begin(), a.inputs.values().end());
  values.insert(values.end(), b.inputs.values().begin(), b.inputs.values().end());
  std::vector<int> labels(a.labels);
  labels.insert(labels.end(), b.labels.begin(), b.labels.end());
  return {Tensor::from({a.size() + b.size(), a.dim()}, std::move(values)), std::move(labels), a.source};
}

}  // namespace incgan
