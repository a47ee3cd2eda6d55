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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "incgan/binary_io.hpp"
#include "incgan/errors.hpp"
#include "incgan/ops.hpp"
#include "incgan/optim.hpp"
#include "incgan/rng.hpp"
#include "oracles.hpp"

using namespace incgan;

TEST_CASE("tensor basics") {
  Tensor t = Tensor::matrix({{1, 2, 3}, {4, 5, 6}});
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
  CHECK(t.at(1, 2) == 6);
  CHECK(Tensor::scalar(2.5).item() == 2.5);
  CHECK_THROWS_AS(t.item(), ContractError);
  CHECK_THROWS_AS(Tensor::from({2, 2}, {1, 2, 3}), DimensionError);
  CHECK(shape_string({2, 3}) == "[2x3]");

  Tensor c = t.clone();
  c.mutable_values()[0] = 10;
  CHECK(t.at(0, 0) == 1);
  CHECK_FALSE(c.same_storage(t));
}

TEST_CASE("backward needs a scalar") {
  Tensor x = Tensor::matrix({{1, 2}}, true);
  CHECK_THROWS_AS(scale(x, 2).backward(), ContractError);
}

TEST_CASE("gradients accumulate over shared inputs") {
  Tensor x = Tensor::scalar(3.0, true);
  // d/dx (x*x + x) = 2x + 1
  sum(add(mul(x, x), x)).backward();
  CHECK(x.grad()[0] == doctest::Approx(7.0));
}

TEST_CASE("no-grad guard stops recording") {
  Tensor x = Tensor::matrix({{1, -2}}, true);
  {
    NoGradGuard guard;
    CHECK_FALSE(grad_enabled());
    Tensor y = relu(x);
    CHECK_FALSE(y.requires_grad());
  }
  CHECK(grad_enabled());
  CHECK(relu(x).requires_grad());
}

TEST_CASE("tape is released after backward") {
  Tensor x = Tensor::matrix({{1, 2}}, true);
  Tensor y = sum(mul(x, x));
  y.backward();
  CHECK(y.node()->parents.empty());
  CHECK_FALSE(static_cast<bool>(y.node()->backward_fn));
  CHECK(x.has_grad());
}

TEST_CASE("matmul matches the triple-loop oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.index(6), k = 1 + rng.index(6), n = 1 + rng.index(6);
    Tensor a = oracle::random_matrix(rng, m, k);
    Tensor b = oracle::random_matrix(rng, k, n);
    const auto want = oracle::matmul(oracle::to_matrix(a), oracle::to_matrix(b));
    Tensor got = matmul(a, b);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(got.at(i, j) == doctest::Approx(static_cast<double>(want[i][j])).epsilon(1e-12));
  }
}

TEST_CASE("matmul shape errors name both shapes") {
  try {
    matmul(Tensor::zeros({2, 3}), Tensor::zeros({2, 3}));
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("[2x3]") != std::string::npos);
  }
}

TEST_CASE("softmax matches the extended-precision oracle") {
  Rng rng(5);
  for (double t : {1.0, 2.0, 0.5}) {
    Tensor z = oracle::random_matrix(rng, 4, 5, 3.0);
    Tensor p = softmax(z, t);
    Tensor lp = log_softmax(z, t);
    const auto zm = oracle::to_matrix(z);
    for (std::size_t r = 0; r < 4; ++r) {
      const auto want = oracle::softmax(zm[r], t);
      double row = 0;
      for (std::size_t c = 0; c < 5; ++c) {
        CHECK(p.at(r, c) == doctest::Approx(static_cast<double>(want[c])).epsilon(1e-13));
        CHECK(lp.at(r, c) == doctest::Approx(std::log(static_cast<double>(want[c]))).epsilon(1e-12));
        row += p.at(r, c);
      }
      CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("softmax is stable for large logits and rejects bad input") {
  Tensor p = softmax(Tensor::matrix({{1000, 1000}}));
  CHECK(p.at(0, 0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(softmax(Tensor::matrix({{std::numeric_limits<double>::infinity(), 0}})),
                  NumericError);
  CHECK_THROWS_AS(softmax(Tensor::matrix({{1, 0}}), 0.0), ContractError);
}

TEST_CASE("op gradients match central differences") {
  Rng rng(3);
  const Tensor w = oracle::random_matrix(rng, 3, 4);
  const Tensor row = oracle::random_matrix(rng, 1, 4);
  const Tensor b = Tensor::from({4}, {row[0], row[1], row[2], row[3]});
  const std::vector<std::size_t> idx{1, 0, 2, 2, 1};
  struct Case {
    std::string name;
    std::function<Tensor(const Tensor&)> f;
  };
  const std::vector<Case> cases = {
      {"matmul", [&](const Tensor& x) { return sum(mul(matmul(x, w), matmul(x, w))); }},
      {"add_row", [&](const Tensor& x) { return sum(mul(add_row(matmul(x, w), b), matmul(x, w))); }},
      {"relu", [&](const Tensor& x) { return sum(mul(relu(matmul(x, w)), matmul(x, w))); }},
      {"softmax", [&](const Tensor& x) { return sum(mul(softmax(matmul(x, w), 2.0), matmul(x, w))); }},
      {"log_softmax", [&](const Tensor& x) { return mean(mul(log_softmax(x, 1.5), x)); }},
      {"slice", [&](const Tensor& x) { return sum(mul(slice_cols(x, 1, 3), slice_cols(x, 0, 2))); }},
      {"pick", [&](const Tensor& x) { return sum(mul(pick(x, idx), pick(x, idx))); }},
      {"row_sum", [&](const Tensor& x) { return sum(mul(row_sum(x), row_sum(x))); }},
      {"sub/scale", [&](const Tensor& x) { return mean(mul(sub(x, scale(x, 0.3)), x)); }},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    Tensor x = oracle::random_matrix(rng, 5, 3);
    CHECK(oracle::gradient_error(c.f, x) < 1e-6);
  }
}

TEST_CASE("sgd step examples") {
  SUBCASE("plain step") {
    std::vector<Parameter> params{{"p", Tensor::scalar(1.0, true)}};
    params[0].tensor.mutable_grad()[0] = 1.0;
    sgd_step(params, SgdConfig{0.1, 0.0, 0.0});
    CHECK(params[0].tensor.item() == doctest::Approx(0.9));
    CHECK_FALSE(params[0].tensor.has_grad());
  }
  SUBCASE("zero learning rate leaves parameters unchanged") {
    std::vector<Parameter> params{{"p", Tensor::scalar(1.25, true)}};
    params[0].tensor.mutable_grad()[0] = 4.0;
    sgd_step(params, SgdConfig{0.0, 0.1, 0.9});
    CHECK(params[0].tensor.item() == 1.25);
  }
  SUBCASE("momentum and weight decay follow the recurrence") {
    std::vector<Parameter> params{{"p", Tensor::scalar(2.0, true)}};
    SgdOptimizer opt(params, SgdConfig{0.1, 0.01, 0.5});
    double p = 2.0, v = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double g = 0.3 * (i + 1);
      params[0].tensor.mutable_grad()[0] = g;
      opt.step();
      v = 0.5 * v + (g + 0.01 * p);
      p -= 0.1 * v;
      CHECK(params[0].tensor.item() == doctest::Approx(p).epsilon(1e-14));
    }
  }
  SUBCASE("missing gradient is a contract error") {
    std::vector<Parameter> params{{"w", Tensor::scalar(1.0, true)}};
    SgdOptimizer opt(params, SgdConfig{});
    CHECK_THROWS_AS(opt.step(), ContractError);
  }
  CHECK_THROWS_AS(SgdConfig({-0.1, 0.0, 0.0}).validate(), ContractError);
  CHECK_THROWS_AS(SgdConfig({0.1, 0.0, 1.0}).validate(), ContractError);
}

TEST_CASE("rmsprop follows its recurrence") {
  std::vector<Parameter> params{{"p", Tensor::scalar(1.0, true)}};
  RmsPropOptimizer opt(params, RmsPropConfig{0.01, 0.9, 1e-8});
  double p = 1.0, ms = 0.0;
  for (double g : {0.5, -0.2, 1.0}) {
    params[0].tensor.mutable_grad()[0] = g;
    opt.step();
    ms = 0.9 * ms + 0.1 * g * g;
    p -= 0.01 * g / (std::sqrt(ms) + 1e-8);
    CHECK(params[0].tensor.item() == doctest::Approx(p).epsilon(1e-14));
  }
}

TEST_CASE("little-endian binary round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "incgan_test_core";
  std::filesystem::create_directories(dir);
  const std::vector<double> d{0.0, -1.5, 1e-300, std::numeric_limits<double>::max()};
  write_f64_le(dir / "d.bin", d);
  CHECK(read_f64_le(dir / "d.bin") == d);
  const auto bytes = read_bytes(dir / "d.bin");
  REQUIRE(bytes.size() == 32);
  // -1.5 is 0xBFF8000000000000: the sign/exponent byte comes last
  CHECK(bytes[15] == 0xBF);
  CHECK(bytes[14] == 0xF8);
  const std::vector<std::int32_t> i{0, -1, 7, 1 << 30};
  write_i32_le(dir / "i.bin", i);
  CHECK(read_i32_le(dir / "i.bin") == i);
  CHECK_THROWS_AS(read_f64_le(dir / "missing.bin"), IoError);
}

TEST_CASE("rng streams are reproducible and forks independent") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng fa = a.fork(), fb = b.fork();
  CHECK(fa.next_u64() == fb.next_u64());
  CHECK(a.next_u64() != fa.next_u64());
}
