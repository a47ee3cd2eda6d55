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

#include <vector>

#include "incgan/tensor.hpp"

namespace incgan {

struct SgdConfig {
  double learning_rate = 0.05;
  double weight_decay = 0.0002;
  double momentum = 0.9;

  /// Throws ContractError on out-of-range fields.
  void validate() const;
};

// Momentum SGD with L2 weight decay:
//   v <- momentum * v + (grad + weight_decay * p);  p <- p - lr * v
// Gradients are cleared after every step.
class SgdOptimizer {
 public:
  SgdOptimizer(std::vector<Parameter> params, SgdConfig cfg);

  void step();
  void set_learning_rate(double lr);
  const SgdConfig& config() const { return cfg_; }

 private:
  std::vector<Parameter> params_;
  std::vector<std::vector<double>> velocity_;
  SgdConfig cfg_;
};

/// One stateless momentum-free update; equivalent to a fresh SgdOptimizer
/// with momentum 0.
void sgd_step(std::vector<Parameter>& params, const SgdConfig& cfg);

struct RmsPropConfig {
  double learning_rate = 5e-4;
  double decay = 0.9;
  double epsilon = 1e-8;
};

// RMSProp, used for the adversarial pair where gradient magnitudes are set by
// the critic's clipped weights.
class RmsPropOptimizer {
 public:
  RmsPropOptimizer(std::vector<Parameter> params, RmsPropConfig cfg);

  void step();

 private:
  std::vector<Parameter> params_;
  std::vector<std::vector<double>> mean_square_;
  RmsPropConfig cfg_;
};

/// Clears the gradient of every parameter.
void zero_grad(std::vector<Parameter>& params);

}  // namespace incgan
