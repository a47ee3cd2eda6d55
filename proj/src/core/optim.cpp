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

#include "incgan/optim.hpp"

#include <cmath>
#include <string>

#include "incgan/errors.hpp"

namespace incgan {

void SgdConfig::validate() const {
  // Zero learning rate is accepted: it freezes a run without changing its
  // control flow.
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ContractError("learning_rate must be non-negative, got " + std::to_string(learning_rate));
  }
  if (!(weight_decay >= 0.0)) {
    throw ContractError("weight_decay must be non-negative, got " + std::to_string(weight_decay));
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ContractError("momentum must lie in [0, 1), got " + std::to_string(momentum));
  }
}

namespace {

void require_grad(const Parameter& p) {
  if (!p.tensor.has_grad()) throw ContractError("parameter '" + p.name + "' has no gradient");
}

}  // namespace

SgdOptimizer::SgdOptimizer(std::vector<Parameter> params, SgdConfig cfg)
    : params_(std::move(params)), cfg_(cfg) {
  cfg_.validate();
  velocity_.reserve(params_.size());
  for (const auto& p : params_) velocity_.emplace_back(p.tensor.size(), 0.0);
}

void SgdOptimizer::set_learning_rate(double lr) {
  cfg_.learning_rate = lr;
  cfg_.validate();
}

void SgdOptimizer::step() {
  for (const auto& p : params_) require_grad(p);
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Tensor& t = params_[k].tensor;
    auto values = t.mutable_values();
    auto grad = t.grad();
    auto& v = velocity_[k];
    for (std::size_t i = 0; i < values.size(); ++i) {
      v[i] = cfg_.momentum * v[i] + (grad[i] + cfg_.weight_decay * values[i]);
      values[i] -= cfg_.learning_rate * v[i];
    }
    t.clear_grad();
  }
}

void sgd_step(std::vector<Parameter>& params, const SgdConfig& cfg) {
  SgdConfig plain = cfg;
  plain.momentum = 0.0;
  SgdOptimizer(params, plain).step();
}

RmsPropOptimizer::RmsPropOptimizer(std::vector<Parameter> params, RmsPropConfig cfg)
    : params_(std::move(params)), cfg_(cfg) {
  if (!(cfg_.learning_rate > 0.0)) throw ContractError("RMSProp learning rate must be positive");
  mean_square_.reserve(params_.size());
  for (const auto& p : params_) mean_square_.emplace_back(p.tensor.size(), 0.0);
}

void RmsPropOptimizer::step() {
  for (const auto& p : params_) require_grad(p);
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Tensor& t = params_[k].tensor;
    auto values = t.mutable_values();
    auto grad = t.grad();
    auto& ms = mean_square_[k];
    for (std::size_t i = 0; i < values.size(); ++i) {
      ms[i] = cfg_.decay * ms[i] + (1.0 - cfg_.decay) * grad[i] * grad[i];
      values[i] -= cfg_.learning_rate * grad[i] / (std::sqrt(ms[i]) + cfg_.epsilon);
    }
    t.clear_grad();
  }
}

void zero_grad(std::vector<Parameter>& params) {
  for (auto& p : params) p.tensor.clear_grad();
}

}  // namespace incgan
