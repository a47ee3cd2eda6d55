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

#include "incgan/models.hpp"

#include <algorithm>
#include <cmath>

#include "incgan/errors.hpp"
#include "incgan/ops.hpp"

namespace incgan {

namespace {

constexpr double kNewHeadScale = 0.01;

std::vector<Parameter> deep_copy(const std::vector<Parameter>& params) {
  std::vector<Parameter> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back({p.name, p.tensor.clone()});
  return out;
}

}  // namespace

Mlp::Mlp(std::vector<std::size_t> widths, Rng& rng, const std::string& prefix)
    : widths_(std::move(widths)) {
  if (widths_.size() < 2) throw ContractError("an MLP needs at least input and output widths");
  for (auto w : widths_) {
    if (w == 0) throw ContractError("MLP widths must be positive");
  }
  for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
    const std::size_t in = widths_[l], out = widths_[l + 1];
    const double stddev = std::sqrt(2.0 / static_cast<double>(in));
    std::vector<double> w(in * out);
    for (double& v : w) v = rng.normal(0.0, stddev);
    params_.push_back({prefix + ".w" + std::to_string(l), Tensor::from({in, out}, std::move(w), true)});
    params_.push_back({prefix + ".b" + std::to_string(l), Tensor::zeros({out}, true)});
  }
}

Mlp::Mlp(const Mlp& other) : widths_(other.widths_), params_(deep_copy(other.params_)) {}

Mlp& Mlp::operator=(const Mlp& other) {
  if (this != &other) {
    widths_ = other.widths_;
    params_ = deep_copy(other.params_);
  }
  return *this;
}

Mlp Mlp::from_parameters(std::vector<std::size_t> widths, std::vector<Tensor> tensors,
                         const std::string& prefix) {
  if (widths.size() < 2) throw ContractError("an MLP needs at least input and output widths");
  if (tensors.size() != 2 * (widths.size() - 1)) {
    throw ContractError("expected " + std::to_string(2 * (widths.size() - 1)) +
                        " parameter tensors, got " + std::to_string(tensors.size()));
  }
  Mlp mlp;
  mlp.widths_ = std::move(widths);
  for (std::size_t l = 0; l + 1 < mlp.widths_.size(); ++l) {
    const Shape ws{mlp.widths_[l], mlp.widths_[l + 1]};
    const Shape bs{mlp.widths_[l + 1]};
    Tensor& w = tensors[2 * l];
    Tensor& b = tensors[2 * l + 1];
    if (w.shape() != ws || b.shape() != bs) {
      throw DimensionError("layer " + std::to_string(l) + " expects " + shape_string(ws) + " and " +
                           shape_string(bs) + ", got " + shape_string(w.shape()) + " and " +
                           shape_string(b.shape()));
    }
    w.set_requires_grad(true);
    b.set_requires_grad(true);
    mlp.params_.push_back({prefix + ".w" + std::to_string(l), w});
    mlp.params_.push_back({prefix + ".b" + std::to_string(l), b});
  }
  return mlp;
}

void Mlp::set_trainable(bool flag) {
  for (auto& p : params_) p.tensor.set_requires_grad(flag);
}

Tensor Mlp::run(const Tensor& x, std::size_t layers) const {
  if (x.rank() != 2 || x.cols() != input_dim()) {
    throw DimensionError("network expects B x " + std::to_string(input_dim()) + " input, got " +
                         shape_string(x.shape()));
  }
  Tensor h = x;
  for (std::size_t l = 0; l < layers; ++l) {
    h = add_row(matmul(h, weight(l)), bias(l));
    if (l + 1 < layer_count()) h = relu(h);
  }
  return h;
}

Tensor Mlp::forward(const Tensor& x) const { return run(x, layer_count()); }

Tensor Mlp::features(const Tensor& x) const { return run(x, layer_count() - 1); }

ClassifierNet::ClassifierNet(std::vector<std::size_t> widths, std::uint64_t seed) : seed_(seed) {
  Rng rng(seed);
  mlp_ = Mlp(std::move(widths), rng, "classifier");
}

Tensor ClassifierNet::forward(const Tensor& batch) const { return mlp_.forward(batch); }

ClassifierNet expand_head(const ClassifierNet& net, std::size_t extra_classes, Rng& rng) {
  if (extra_classes < 1) throw ContractError("expand_head needs at least one extra class");
  const Mlp& old = net.mlp();
  const std::size_t head = old.layer_count() - 1;
  const std::size_t fan_in = old.widths()[head];
  const std::size_t n = old.output_dim();
  const std::size_t total = n + extra_classes;

  std::vector<double> w(fan_in * total);
  std::vector<double> b(total, 0.0);
  const auto old_w = old.weight(head).values();
  for (std::size_t i = 0; i < fan_in; ++i) {
    std::copy_n(old_w.data() + i * n, n, w.data() + i * total);
  }
  for (std::size_t i = 0; i < fan_in; ++i) {
    for (std::size_t j = n; j < total; ++j) w[i * total + j] = rng.normal(0.0, kNewHeadScale);
  }
  std::copy_n(old.bias(head).values().data(), n, b.data());

  std::vector<Tensor> tensors;
  for (std::size_t l = 0; l < head; ++l) {
    tensors.push_back(old.weight(l).clone());
    tensors.push_back(old.bias(l).clone());
  }
  tensors.push_back(Tensor::from({fan_in, total}, std::move(w)));
  tensors.push_back(Tensor::from({total}, std::move(b)));

  auto widths = old.widths();
  widths.back() = total;
  return ClassifierNet(Mlp::from_parameters(std::move(widths), std::move(tensors), "classifier"),
                       net.seed());
}

FrozenClassifier snapshot(const ClassifierNet& net) {
  Mlp copy = net.mlp();
  copy.set_trainable(false);
  FrozenClassifier frozen;
  frozen.mlp_ = std::make_shared<const Mlp>(std::move(copy));
  return frozen;
}

Tensor FrozenClassifier::forward(const Tensor& batch) const {
  NoGradGuard guard;
  return mlp_->forward(batch);
}

Tensor FrozenClassifier::features(const Tensor& batch) const {
  NoGradGuard guard;
  return mlp_->features(batch);
}

GeneratorNet::GeneratorNet(std::size_t noise_dim, std::vector<std::size_t> hidden,
                           std::size_t data_dim, Rng& rng)
    : shift_(data_dim, 0.0), scale_(data_dim, 1.0) {
  std::vector<std::size_t> widths{noise_dim};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(data_dim);
  mlp_ = Mlp(std::move(widths), rng, "generator");
}

Tensor GeneratorNet::forward_standardized(const Tensor& noise) const { return mlp_.forward(noise); }

Tensor GeneratorNet::forward(const Tensor& noise) const {
  NoGradGuard guard;
  Tensor out = mlp_.forward(noise).detach();
  const std::size_t d = data_dim();
  auto v = out.mutable_values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] * scale_[i % d] + shift_[i % d];
  return out;
}

Tensor GeneratorNet::sample_noise(std::size_t count, Rng& rng) const {
  std::vector<double> z(count * noise_dim());
  for (double& v : z) v = rng.normal();
  return Tensor::from({count, noise_dim()}, std::move(z));
}

void GeneratorNet::set_output_affine(std::vector<double> shift, std::vector<double> scale) {
  if (shift.size() != data_dim() || scale.size() != data_dim()) {
    throw DimensionError("output affine must have " + std::to_string(data_dim()) + " entries");
  }
  shift_ = std::move(shift);
  scale_ = std::move(scale);
}

CriticNet::CriticNet(std::size_t data_dim, std::vector<std::size_t> hidden, Rng& rng) {
  std::vector<std::size_t> widths{data_dim};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(1);
  mlp_ = Mlp(std::move(widths), rng, "critic");
}

void CriticNet::clip(double c) {
  for (auto& p : mlp_.parameters()) {
    for (double& v : p.tensor.mutable_values()) v = std::clamp(v, -c, c);
  }
}

double CriticNet::max_abs_weight() const {
  double m = 0.0;
  for (const auto& p : mlp_.parameters()) {
    for (double v : p.tensor.values()) m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace incgan
