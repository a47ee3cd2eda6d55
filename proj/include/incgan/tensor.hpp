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
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace incgan {

using Shape = std::vector<std::size_t>;

std::string shape_string(const Shape& shape);
std::size_t shape_size(const Shape& shape);

namespace detail {

struct Node {
  Shape shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty until a gradient is accumulated
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void(Node&)> backward_fn;

  bool is_leaf() const { return parents.empty(); }
  std::vector<double>& ensure_grad();
};

}  // namespace detail

// Dense row-major array of doubles with an optional gradient slot.
//
// Tensor is a handle: copies share the same storage and gradient. Operations
// involving a tensor that requires grad record themselves on an implicit tape
// (the parent links of the result); backward() walks that tape once and then
// releases it. Use clone() for an independent deep copy.
class Tensor {
 public:
  Tensor();

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> values, bool requires_grad = false);
  /// Shape {1}.
  static Tensor scalar(double value, bool requires_grad = false);
  /// Shape {rows, cols} from nested rows; all rows must have equal length.
  static Tensor matrix(const std::vector<std::vector<double>>& rows, bool requires_grad = false);

  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t size() const { return node_->values.size(); }
  /// Leading dimension for rank-2, 1 for rank-1.
  std::size_t rows() const;
  /// Trailing dimension.
  std::size_t cols() const;

  std::span<const double> values() const { return node_->values; }
  std::span<double> mutable_values() { return node_->values; }
  double operator[](std::size_t i) const { return node_->values[i]; }
  double at(std::size_t r, std::size_t c) const;
  double item() const;

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool flag) { node_->requires_grad = flag; }
  bool has_grad() const { return !node_->grad.empty(); }
  std::span<const double> grad() const { return node_->grad; }
  std::span<double> mutable_grad() { return node_->ensure_grad(); }
  void clear_grad() { node_->grad.clear(); }

  /// Reverse-mode sweep from this scalar; accumulates into leaf gradients.
  void backward() const;

  /// Copy of the values with no gradient and no tape.
  Tensor detach() const;
  /// Deep copy of values (and requires_grad flag); no tape, no gradient.
  Tensor clone() const;

  bool same_storage(const Tensor& other) const { return node_ == other.node_; }

  // Internal use by operations.
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}
  const std::shared_ptr<detail::Node>& node() const { return node_; }

 private:
  std::shared_ptr<detail::Node> node_;
};

/// True while no NoGradGuard is active on this thread.
bool grad_enabled();

// Disables tape recording on the current thread for its lifetime.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

// A named trainable tensor.
struct Parameter {
  std::string name;
  Tensor tensor;
};

}  // namespace incgan
