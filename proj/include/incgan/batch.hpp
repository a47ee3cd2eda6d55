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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "incgan/tensor.hpp"

namespace incgan {

enum class SampleSource { OldExemplar, NewData, GanReplay };

std::string to_string(SampleSource source);
SampleSource parse_sample_source(std::string_view text);

// Inputs with integer class labels. Labels are 0-based class indices.
struct LabeledBatch {
  Tensor inputs = Tensor::zeros({0, 0});  // B x D
  std::vector<int> labels;
  SampleSource source = SampleSource::NewData;

  static LabeledBatch empty(std::size_t dim, SampleSource source = SampleSource::NewData);
  static LabeledBatch make(Tensor inputs, std::vector<int> labels,
                           SampleSource source = SampleSource::NewData);

  std::size_t size() const { return labels.size(); }
  bool is_empty() const { return labels.empty(); }
  std::size_t dim() const { return inputs.cols(); }

  /// Rows in the given order.
  LabeledBatch subset(std::span<const std::size_t> rows) const;
  /// Indices of the rows labeled `label`, ascending.
  std::vector<std::size_t> rows_of(int label) const;
  /// Sorted distinct labels.
  std::vector<int> classes() const;

  /// Throws ContractError unless every label lies in [first, first + count).
  void require_labels_in(int first, int count, std::string_view what) const;
};

/// Rows of `a` followed by rows of `b`; the source tag of `a` is kept.
LabeledBatch concat(const LabeledBatch& a, const LabeledBatch& b);

}  // namespace incgan
