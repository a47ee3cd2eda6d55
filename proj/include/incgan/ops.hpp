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

#include "incgan/tensor.hpp"

// Differentiable tensor operations. Matrices are rank-2 row-major; a rank-1
// tensor is treated as a single row where row-wise semantics apply.
namespace incgan {

/// [m x k] * [k x n] -> [m x n].
Tensor matmul(const Tensor& a, const Tensor& b);

/// Element-wise; shapes must match.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);

/// [B x N] + [N] broadcast across rows.
Tensor add_row(const Tensor& a, const Tensor& row);

Tensor relu(const Tensor& x);

/// Row-wise softmax of x / temperature, max-subtracted.
Tensor softmax(const Tensor& logits, double temperature = 1.0);
/// Row-wise log of softmax(x / temperature).
Tensor log_softmax(const Tensor& logits, double temperature = 1.0);

/// Columns [begin, end) of a matrix.
Tensor slice_cols(const Tensor& x, std::size_t begin, std::size_t end);

/// out[i] = x[i, index[i]]; shape {B}.
Tensor pick(const Tensor& x, std::span<const std::size_t> index);

/// Per-row sum; shape {B}.
Tensor row_sum(const Tensor& x);

/// Sum / mean of every entry; shape {1}.
Tensor sum(const Tensor& x);
Tensor mean(const Tensor& x);

}  // namespace incgan
