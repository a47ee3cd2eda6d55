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
#include <vector>

#include "incgan/exemplar_store.hpp"
#include "incgan/rng.hpp"

namespace incgan {

/// Per-class uniform sampling without replacement, up to the per-class quota
/// of the classes present in `data`.
ExemplarStore select_random(const LabeledBatch& data, const ExemplarBudget& budget, Rng& rng);

/// Greedy mean-matching (herding) selection. `features` holds one
/// L2-normalized row per sample of `data`. `classes` lists the classes to
/// cover; classes without samples are skipped with a manifest warning. When
/// empty, the classes present in `data` are used.
ExemplarStore select_herding(const LabeledBatch& data, const Tensor& features,
                             const ExemplarBudget& budget, std::span<const int> classes = {});

/// Herding order over the rows of a k x d feature matrix: after each pick the
/// mean of the picked rows is the closest achievable to the mean of all rows.
/// Ties go to the lowest row index.
std::vector<std::size_t> herding_order(const Tensor& features, std::size_t count);

/// Rows divided by their Euclidean norm; zero rows stay zero.
Tensor l2_normalize_rows(const Tensor& x);

}  // namespace incgan
