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

#include <span>
#include <string>
#include <vector>

#include "incgan/protocol.hpp"

namespace incgan {

struct LambdaSweepRow {
  double lambda = 0.0;
  double validation = 0.0;  // last increment, at the estimated beta
  double test = 0.0;
};

/// {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}.
std::vector<double> default_lambda_grid();

/// One run_protocol per lambda with every seed shared.
std::vector<LambdaSweepRow> sweep_lambda(const ProtocolConfig& base, const Dataset& data,
                                         std::span<const double> grid);

struct BetaSweepRow {
  double beta = 0.0;
  double validation = 0.0;
  double test = 0.0;
  bool best_validation = false;  // argmax, ties to the largest beta
  bool best_test = false;
};

std::vector<BetaSweepRow> sweep_beta(const ClassifierNet& net, std::size_t old_classes,
                                     const LabeledBatch& validation, const LabeledBatch& test,
                                     std::span<const double> grid);

std::string lambda_sweep_csv(std::span<const LambdaSweepRow> rows);
std::string beta_sweep_csv(std::span<const BetaSweepRow> rows);

}  // namespace incgan
