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

#include "incgan/ops.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "incgan/errors.hpp"

namespace incgan {

namespace {

using detail::Node;

// Builds the result node and records it on the tape when any input needs
// gradients.
Tensor record(Shape shape, std::vector<double> values, std::initializer_list<Tensor> inputs,
              std::function<void(Node&)> backward_fn) {
  Tensor out = Tensor::from(std::move(shape), std::move(values));
  if (!grad_enabled()) return out;
  bool any = false;
  for (const auto& t : inputs) any = any || t.requires_grad();
  if (!any) return out;
  Node& node = *out.node();
  node.requires_grad = true;
  for (const auto& t : inputs) node.parents.push_back(t.node());
  node.backward_fn = std::move(backward_fn);
  return out;
}

void require_matrix(const Tensor& t, const char* op) {
  if (t.rank() != 2) {
    throw DimensionError(std::string(op) + " expects a matrix, got " + shape_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) +
                         " vs " + shape_string(b.shape()));
  }
}

void require_finite(std::span<const double> values, const char* op) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericError(std::string(op) + ": non-finite input");
  }
}

void require_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ContractError("temperature must be positive, got " + std::to_string(temperature));
  }
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (b.rows() != k) {
    throw DimensionError("matmul: inner dimensions disagree, " + shape_string(a.shape()) + " x " +
                         shape_string(b.shape()));
  }
  std::vector<double> out(m * n, 0.0);
  const double* av = a.values().data();
  const double* bv = b.values().data();
  // i-k-j order: each out[i, j] accumulates over k in increasing order, so
  // a column's value does not depend on how many other columns exist.
  for (std::size_t i = 0; i < m; ++i) {
    double* orow = out.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av[i * k + p];
      const double* brow = bv + p * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += aip * brow[j];
    }
  }
  return record({m, n}, std::move(out), {a, b}, [m, k, n](Node& self) {
    Node& na = *self.parents[0];
    Node& nb = *self.parents[1];
    const double* g = self.grad.data();
    if (na.requires_grad) {
      auto& ga = na.ensure_grad();
      const double* bv = nb.values.data();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          double s = 0.0;
          for (std::size_t j = 0; j < n; ++j) s += g[i * n + j] * bv[p * n + j];
          ga[i * k + p] += s;
        }
      }
    }
    if (nb.requires_grad) {
      auto& gb = nb.ensure_grad();
      const double* av = na.values.data();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = av[i * k + p];
          double* grow = gb.data() + p * n;
          for (std::size_t j = 0; j < n; ++j) grow[j] += aip * g[i * n + j];
        }
      }
    }
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return record(a.shape(), std::move(out), {a, b}, [](Node& self) {
    for (auto& parent : self.parents) {
      if (!parent->requires_grad) continue;
      auto& g = parent->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return record(a.shape(), std::move(out), {a, b}, [](Node& self) {
    if (self.parents[0]->requires_grad) {
      auto& g = self.parents[0]->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
    if (self.parents[1]->requires_grad) {
      auto& g = self.parents[1]->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= self.grad[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return record(a.shape(), std::move(out), {a, b}, [](Node& self) {
    Node& na = *self.parents[0];
    Node& nb = *self.parents[1];
    if (na.requires_grad) {
      auto& g = na.ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * nb.values[i];
    }
    if (nb.requires_grad) {
      auto& g = nb.ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * na.values[i];
    }
  });
}

Tensor scale(const Tensor& a, double factor) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * factor;
  return record(a.shape(), std::move(out), {a}, [factor](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * factor;
  });
}

Tensor add_row(const Tensor& a, const Tensor& row) {
  require_matrix(a, "add_row");
  const std::size_t r = a.rows(), c = a.cols();
  if (row.size() != c) {
    throw DimensionError("add_row: " + shape_string(row.shape()) + " does not broadcast over " +
                         shape_string(a.shape()));
  }
  std::vector<double> out(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] += row[j];
  }
  return record(a.shape(), std::move(out), {a, row}, [r, c](Node& self) {
    if (self.parents[0]->requires_grad) {
      auto& g = self.parents[0]->ensure_grad();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
    if (self.parents[1]->requires_grad) {
      auto& g = self.parents[1]->ensure_grad();
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) g[j] += self.grad[i * c + j];
      }
    }
  });
}

Tensor relu(const Tensor& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
  return record(x.shape(), std::move(out), {x}, [](Node& self) {
    Node& nx = *self.parents[0];
    auto& g = nx.ensure_grad();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (nx.values[i] > 0.0) g[i] += self.grad[i];
    }
  });
}

Tensor softmax(const Tensor& logits, double temperature) {
  require_temperature(temperature);
  require_finite(logits.values(), "softmax");
  const std::size_t r = logits.rows(), c = logits.cols();
  if (c == 0) throw ContractError("softmax over zero classes");
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < r; ++i) {
    const double* row = logits.values().data() + i * c;
    double* o = out.data() + i * c;
    const double mx = *std::max_element(row, row + c);
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      o[j] = std::exp((row[j] - mx) / temperature);
      total += o[j];
    }
    for (std::size_t j = 0; j < c; ++j) o[j] /= total;
  }
  return record(logits.shape(), std::move(out), {logits}, [r, c, temperature](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (std::size_t i = 0; i < r; ++i) {
      const double* y = self.values.data() + i * c;
      const double* dy = self.grad.data() + i * c;
      double dot = 0.0;
      for (std::size_t j = 0; j < c; ++j) dot += dy[j] * y[j];
      for (std::size_t j = 0; j < c; ++j) g[i * c + j] += y[j] * (dy[j] - dot) / temperature;
    }
  });
}

Tensor log_softmax(const Tensor& logits, double temperature) {
  require_temperature(temperature);
  require_finite(logits.values(), "log_softmax");
  const std::size_t r = logits.rows(), c = logits.cols();
  if (c == 0) throw ContractError("log_softmax over zero classes");
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < r; ++i) {
    const double* row = logits.values().data() + i * c;
    double* o = out.data() + i * c;
    const double mx = *std::max_element(row, row + c);
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      o[j] = (row[j] - mx) / temperature;
      total += std::exp(o[j]);
    }
    const double lse = std::log(total);
    for (std::size_t j = 0; j < c; ++j) o[j] -= lse;
  }
  return record(logits.shape(), std::move(out), {logits}, [r, c, temperature](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (std::size_t i = 0; i < r; ++i) {
      const double* y = self.values.data() + i * c;
      const double* dy = self.grad.data() + i * c;
      double total = 0.0;
      for (std::size_t j = 0; j < c; ++j) total += dy[j];
      for (std::size_t j = 0; j < c; ++j) {
        g[i * c + j] += (dy[j] - std::exp(y[j]) * total) / temperature;
      }
    }
  });
}

Tensor slice_cols(const Tensor& x, std::size_t begin, std::size_t end) {
  require_matrix(x, "slice_cols");
  const std::size_t r = x.rows(), c = x.cols();
  if (begin > end || end > c) {
    throw DimensionError("slice_cols: [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") out of range for " + shape_string(x.shape()));
  }
  const std::size_t w = end - begin;
  std::vector<double> out(r * w);
  for (std::size_t i = 0; i < r; ++i) {
    std::copy_n(x.values().data() + i * c + begin, w, out.data() + i * w);
  }
  return record({r, w}, std::move(out), {x}, [r, c, w, begin](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < w; ++j) g[i * c + begin + j] += self.grad[i * w + j];
    }
  });
}

Tensor pick(const Tensor& x, std::span<const std::size_t> index) {
  const std::size_t r = x.rows(), c = x.cols();
  if (index.size() != r) {
    throw DimensionError("pick: " + std::to_string(index.size()) + " indices for " +
                         shape_string(x.shape()));
  }
  std::vector<std::size_t> idx(index.begin(), index.end());
  std::vector<double> out(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (idx[i] >= c) {
      throw DimensionError("pick: index " + std::to_string(idx[i]) + " out of range for " +
                           shape_string(x.shape()));
    }
    out[i] = x.values()[i * c + idx[i]];
  }
  return record({r}, std::move(out), {x}, [c, idx = std::move(idx)](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (std::size_t i = 0; i < idx.size(); ++i) g[i * c + idx[i]] += self.grad[i];
  });
}

Tensor row_sum(const Tensor& x) {
  const std::size_t r = x.rows(), c = x.cols();
  std::vector<double> out(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) out[i] += x.values()[i * c + j];
  }
  return record({r}, std::move(out), {x}, [r, c](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) g[i * c + j] += self.grad[i];
    }
  });
}

Tensor sum(const Tensor& x) {
  double total = 0.0;
  for (double v : x.values()) total += v;
  return record({1}, {total}, {x}, [](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (double& v : g) v += self.grad[0];
  });
}

Tensor mean(const Tensor& x) {
  if (x.size() == 0) throw ContractError("mean of an empty tensor");
  const double n = static_cast<double>(x.size());
  double total = 0.0;
  for (double v : x.values()) total += v;
  return record({1}, {total / n}, {x}, [n](Node& self) {
    auto& g = self.parents[0]->ensure_grad();
    for (double& v : g) v += self.grad[0] / n;
  });
}

}  // namespace incgan
