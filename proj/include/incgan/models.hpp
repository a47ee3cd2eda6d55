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
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "incgan/rng.hpp"
#include "incgan/tensor.hpp"

namespace incgan {

// Dense ReLU network: widths = {input, hidden..., output}; the output layer is
// linear. Weights are stored [fan_in x fan_out] so a layer is x * W + b.
//
// Copying an Mlp deep-copies its parameters.
class Mlp {
 public:
  Mlp() = default;
  /// He-normal weights, zero biases.
  Mlp(std::vector<std::size_t> widths, Rng& rng, const std::string& prefix);

  Mlp(const Mlp& other);
  Mlp& operator=(const Mlp& other);
  Mlp(Mlp&&) noexcept = default;
  Mlp& operator=(Mlp&&) noexcept = default;

  Tensor forward(const Tensor& x) const;
  /// Activations of the last hidden layer (the input itself when there is no
  /// hidden layer).
  Tensor features(const Tensor& x) const;

  const std::vector<std::size_t>& widths() const { return widths_; }
  std::size_t input_dim() const { return widths_.front(); }
  std::size_t output_dim() const { return widths_.back(); }
  std::size_t layer_count() const { return widths_.size() - 1; }

  /// Declaration order: w0, b0, w1, b1, ...
  std::vector<Parameter>& parameters() { return params_; }
  const std::vector<Parameter>& parameters() const { return params_; }
  const Tensor& weight(std::size_t layer) const { return params_[2 * layer].tensor; }
  const Tensor& bias(std::size_t layer) const { return params_[2 * layer + 1].tensor; }
  Tensor& weight(std::size_t layer) { return params_[2 * layer].tensor; }
  Tensor& bias(std::size_t layer) { return params_[2 * layer + 1].tensor; }

  /// Builds a network from explicit parameter tensors in declaration order.
  static Mlp from_parameters(std::vector<std::size_t> widths, std::vector<Tensor> tensors,
                             const std::string& prefix);

  void set_trainable(bool flag);

 private:
  Tensor run(const Tensor& x, std::size_t layers) const;

  std::vector<std::size_t> widths_;
  std::vector<Parameter> params_;
};

class FrozenClassifier;

// Per-class logit network; the last width is the class count.
class ClassifierNet {
 public:
  ClassifierNet() = default;
  ClassifierNet(std::vector<std::size_t> widths, std::uint64_t seed);
  explicit ClassifierNet(Mlp mlp, std::uint64_t seed = 0) : mlp_(std::move(mlp)), seed_(seed) {}

  /// Raw logits, B x class_count.
  Tensor forward(const Tensor& batch) const;
  Tensor features(const Tensor& batch) const { return mlp_.features(batch); }

  std::size_t class_count() const { return mlp_.output_dim(); }
  std::size_t input_dim() const { return mlp_.input_dim(); }
  std::uint64_t seed() const { return seed_; }

  Mlp& mlp() { return mlp_; }
  const Mlp& mlp() const { return mlp_; }
  std::vector<Parameter>& parameters() { return mlp_.parameters(); }

 private:
  Mlp mlp_;
  std::uint64_t seed_ = 0;
};

/// Copy of `net` with `extra_classes` more outputs. Every existing parameter
/// is copied exactly; new head columns are N(0, 0.01^2) and new biases zero,
/// so old-class logits are bitwise unchanged.
ClassifierNet expand_head(const ClassifierNet& net, std::size_t extra_classes, Rng& rng);

// Immutable deep copy of a classifier. Never records on a tape and is safe to
// share between threads.
class FrozenClassifier {
 public:
  FrozenClassifier() = default;

  Tensor forward(const Tensor& batch) const;
  Tensor features(const Tensor& batch) const;
  std::size_t class_count() const { return mlp_ ? mlp_->output_dim() : 0; }
  std::size_t input_dim() const { return mlp_ ? mlp_->input_dim() : 0; }
  const Mlp& mlp() const { return *mlp_; }

  friend FrozenClassifier snapshot(const ClassifierNet& net);

 private:
  std::shared_ptr<const Mlp> mlp_;
};

FrozenClassifier snapshot(const ClassifierNet& net);

/// forward_logits for either kind of classifier.
inline Tensor forward_logits(const ClassifierNet& net, const Tensor& batch) {
  return net.forward(batch);
}
inline Tensor forward_logits(const FrozenClassifier& net, const Tensor& batch) {
  return net.forward(batch);
}

// Maps noise to data space. The network learns a standardized version of the
// data; `forward` applies the per-dimension affine back to data units.
class GeneratorNet {
 public:
  GeneratorNet() = default;
  GeneratorNet(std::size_t noise_dim, std::vector<std::size_t> hidden, std::size_t data_dim,
               Rng& rng);

  /// Standardized output, differentiable.
  Tensor forward_standardized(const Tensor& noise) const;
  /// Samples in data units.
  Tensor forward(const Tensor& noise) const;
  /// noise ~ N(0, I), count x noise_dim.
  Tensor sample_noise(std::size_t count, Rng& rng) const;

  void set_output_affine(std::vector<double> shift, std::vector<double> scale);
  const std::vector<double>& output_shift() const { return shift_; }
  const std::vector<double>& output_scale() const { return scale_; }

  std::size_t noise_dim() const { return mlp_.input_dim(); }
  std::size_t data_dim() const { return mlp_.output_dim(); }
  Mlp& mlp() { return mlp_; }
  const Mlp& mlp() const { return mlp_; }
  std::vector<Parameter>& parameters() { return mlp_.parameters(); }

 private:
  Mlp mlp_;
  std::vector<double> shift_;
  std::vector<double> scale_;
};

// Scalar-output critic for the Wasserstein objective.
class CriticNet {
 public:
  CriticNet() = default;
  CriticNet(std::size_t data_dim, std::vector<std::size_t> hidden, Rng& rng);
  explicit CriticNet(Mlp mlp) : mlp_(std::move(mlp)) {}

  /// One value per sample: B x 1.
  Tensor forward(const Tensor& batch) const { return mlp_.forward(batch); }

  /// Clamps every weight and bias into [-c, c].
  void clip(double c);
  double max_abs_weight() const;

  Mlp& mlp() { return mlp_; }
  const Mlp& mlp() const { return mlp_; }
  std::vector<Parameter>& parameters() { return mlp_.parameters(); }

 private:
  Mlp mlp_;
};

}  // namespace incgan
