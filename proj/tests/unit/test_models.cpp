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

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "incgan/checkpoint.hpp"
#include "incgan/errors.hpp"
#include "incgan/models.hpp"
#include "incgan/ops.hpp"
#include "oracles.hpp"

using namespace incgan;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "incgan_test_models" / name;
  fs::create_directories(dir);
  return dir;
}

bool bitwise_equal(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("mlp shapes and parameter order") {
  ClassifierNet net({3, 5, 4, 2}, 1);
  CHECK(net.class_count() == 2);
  CHECK(net.input_dim() == 3);
  const auto& params = net.parameters();
  REQUIRE(params.size() == 6);
  CHECK(params[0].name == "classifier.w0");
  CHECK(params[0].tensor.shape() == Shape{3, 5});
  CHECK(params[5].tensor.shape() == Shape{2});
  Rng rng(2);
  CHECK(net.forward(oracle::random_matrix(rng, 7, 3)).shape() == Shape{7, 2});
  CHECK(net.features(oracle::random_matrix(rng, 7, 3)).shape() == Shape{7, 4});
  CHECK_THROWS_AS(net.forward(oracle::random_matrix(rng, 7, 4)), DimensionError);
}

TEST_CASE("same seed gives the same network") {
  ClassifierNet a({2, 8, 3}, 9), b({2, 8, 3}, 9), c({2, 8, 3}, 10);
  CHECK(bitwise_equal(a.parameters()[0].tensor, b.parameters()[0].tensor));
  CHECK_FALSE(bitwise_equal(a.parameters()[0].tensor, c.parameters()[0].tensor));
}

TEST_CASE("he initialization scale") {
  ClassifierNet net({200, 300, 2}, 4);
  const auto w = net.parameters()[0].tensor.values();
  double ss = 0;
  for (double v : w) ss += v * v;
  const double sd = std::sqrt(ss / static_cast<double>(w.size()));
  CHECK(sd == doctest::Approx(std::sqrt(2.0 / 200)).epsilon(0.03));
  for (double v : net.parameters()[1].tensor.values()) CHECK(v == 0.0);
}

TEST_CASE("expand_head keeps old logits bitwise") {
  Rng rng(7);
  ClassifierNet net({4, 16, 16, 3}, 5);
  const Tensor x = oracle::random_matrix(rng, 10, 4);
  const Tensor before = net.forward(x);
  const ClassifierNet grown = expand_head(net, 2, rng);
  CHECK(grown.class_count() == 5);
  const Tensor after = grown.forward(x);
  CHECK(bitwise_equal(slice_cols(after, 0, 3), before));

  const Mlp& m = grown.mlp();
  const Tensor& w = m.weight(2);
  double ss = 0;
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 3; j < 5; ++j) ss += w.at(i, j) * w.at(i, j);
  CHECK(std::sqrt(ss / 32) < 0.05);
  CHECK(m.bias(2)[3] == 0.0);
  CHECK(m.bias(2)[4] == 0.0);
  CHECK_THROWS_AS(expand_head(net, 0, rng), ContractError);
}

TEST_CASE("snapshot is an independent frozen copy") {
  Rng rng(1);
  ClassifierNet net({2, 6, 3}, 3);
  const Tensor x = oracle::random_matrix(rng, 4, 2);
  const FrozenClassifier frozen = snapshot(net);
  const Tensor before = frozen.forward(x);
  CHECK_FALSE(before.requires_grad());
  for (auto& p : net.parameters())
    for (double& v : p.tensor.mutable_values()) v += 1.0;
  CHECK(bitwise_equal(frozen.forward(x), before));
  CHECK(frozen.class_count() == 3);
}

TEST_CASE("classifier checkpoint round trip") {
  const auto dir = scratch("classifier");
  ClassifierNet net({3, 7, 4}, 12);
  save_checkpoint(net, dir / "net");
  CHECK(fs::exists(dir / "net.json"));
  CHECK(fs::file_size(dir / "net.bin") == (3 * 7 + 7 + 7 * 4 + 4) * sizeof(double));
  const ClassifierNet back = load_classifier(dir / "net");
  CHECK(back.seed() == 12);
  REQUIRE(back.mlp().widths() == net.mlp().widths());
  for (std::size_t i = 0; i < net.mlp().parameters().size(); ++i) {
    CHECK(bitwise_equal(back.mlp().parameters()[i].tensor, net.mlp().parameters()[i].tensor));
  }
}

TEST_CASE("checkpoint format errors") {
  const auto dir = scratch("errors");
  ClassifierNet net({2, 3, 2}, 1);
  save_checkpoint(net, dir / "net");
  fs::resize_file(dir / "net.bin", 16);
  CHECK_THROWS_AS(load_classifier(dir / "net"), FormatError);
  std::ofstream(dir / "junk.json") << "{not json";
  CHECK_THROWS_AS(load_classifier(dir / "junk"), FormatError);
  CHECK_THROWS_AS(load_classifier(dir / "absent"), IoError);

  Rng rng(3);
  GeneratorNet gen(2, {4}, 2, rng);
  save_checkpoint(gen, dir / "gen");
  CHECK_THROWS_AS(load_classifier(dir / "gen"), FormatError);
}

TEST_CASE("generator checkpoint keeps the output affine") {
  const auto dir = scratch("generator");
  Rng rng(8);
  GeneratorNet gen(3, {5}, 2, rng);
  gen.set_output_affine({1.0, -2.0}, {0.5, 3.0});
  save_checkpoint(gen, dir / "gen");
  const GeneratorNet back = load_generator(dir / "gen");
  CHECK(back.output_shift() == gen.output_shift());
  CHECK(back.output_scale() == gen.output_scale());
  const Tensor z = gen.sample_noise(6, rng);
  CHECK(bitwise_equal(back.forward(z), gen.forward(z)));
}

TEST_CASE("generator forward applies the affine to the standardized output") {
  Rng rng(4);
  GeneratorNet gen(3, {5}, 2, rng);
  gen.set_output_affine({10.0, -1.0}, {2.0, 0.5});
  const Tensor z = gen.sample_noise(4, rng);
  const Tensor s = gen.forward_standardized(z);
  const Tensor x = gen.forward(z);
  for (std::size_t r = 0; r < 4; ++r) {
    CHECK(x.at(r, 0) == doctest::Approx(s.at(r, 0) * 2.0 + 10.0));
    CHECK(x.at(r, 1) == doctest::Approx(s.at(r, 1) * 0.5 - 1.0));
  }
  CHECK_THROWS_AS(gen.set_output_affine({0.0}, {1.0}), DimensionError);
}

TEST_CASE("critic clipping bounds every weight") {
  Rng rng(6);
  CriticNet critic(2, {8, 8}, rng);
  CHECK(critic.max_abs_weight() > 0.01);
  critic.clip(0.01);
  CHECK(critic.max_abs_weight() <= 0.01);
  CHECK(critic.forward(oracle::random_matrix(rng, 3, 2)).shape() == Shape{3, 1});
}
