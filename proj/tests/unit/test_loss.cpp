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

#include "incgan/bias.hpp"
#include "incgan/errors.hpp"
#include "incgan/losses.hpp"
#include "incgan/ops.hpp"
#include "incgan/training.hpp"
#include "oracles.hpp"

using namespace incgan;

namespace {

// Linear classifier whose logits equal its inputs.
ClassifierNet identity_net(std::size_t k) {
  std::vector<double> w(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) w[i * k + i] = 1.0;
  return ClassifierNet(Mlp::from_parameters({k, k}, {Tensor::from({k, k}, w), Tensor::zeros({k})},
                                            "classifier"));
}

bool same_parameters(ClassifierNet& a, ClassifierNet& b) {
  for (std::size_t p = 0; p < a.parameters().size(); ++p) {
    const auto x = a.parameters()[p].tensor.values();
    const auto y = b.parameters()[p].tensor.values();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) return false;
    }
  }
  return true;
}

LabeledBatch blobs(std::size_t per_class, std::vector<int> classes, Rng& rng) {
  std::vector<double> x;
  std::vector<int> y;
  for (int c : classes) {
    for (std::size_t i = 0; i < per_class; ++i) {
      x.push_back(3.0 * std::cos(c) + rng.normal(0, 0.4));
      x.push_back(3.0 * std::sin(c) + rng.normal(0, 0.4));
      y.push_back(c);
    }
  }
  return LabeledBatch::make(Tensor::from({y.size(), 2}, x), y);
}

}  // namespace

TEST_CASE("distillation matches the extended-precision oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + rng.index(5), m = 1 + rng.index(4), b = 1 + rng.index(6);
    const double t = trial % 2 ? 2.0 : 1.0 + rng.uniform() * 3;
    const Tensor teacher = oracle::random_matrix(rng, b, n, 2.0);
    const Tensor student = oracle::random_matrix(rng, b, n + m, 2.0);
    LossConfig cfg{0.5, t, n, m};
    const double got = distillation_loss_from_logits(teacher, student, cfg).item();
    const auto want = oracle::distillation(oracle::to_matrix(teacher), oracle::to_matrix(student), t);
    CHECK(got == doctest::Approx(static_cast<double>(want)).epsilon(1e-12));
  }
}

TEST_CASE("distillation of identical heads is the teacher entropy") {
  const Tensor t = Tensor::matrix({{0.0, 0.0}});
  const Tensor s = Tensor::matrix({{0.0, 0.0, 9.0}});
  LossConfig cfg{0.5, 2.0, 2, 1};
  CHECK(distillation_loss_from_logits(t, s, cfg).item() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("distillation contract and shape errors") {
  LossConfig none{0.5, 2.0, 0, 2};
  CHECK_THROWS_AS(distillation_loss_from_logits(Tensor::zeros({1, 0}), Tensor::zeros({1, 2}), none),
                  ContractError);
  LossConfig cfg{0.5, 2.0, 2, 1};
  CHECK_THROWS_AS(distillation_loss_from_logits(Tensor::zeros({1, 2}), Tensor::zeros({1, 4}), cfg),
                  DimensionError);
  CHECK_THROWS_AS(LossConfig({1.5, 2.0, 1, 1}).validate(), ContractError);
  CHECK_THROWS_AS(LossConfig({0.5, 0.0, 1, 1}).validate(), ContractError);
}

TEST_CASE("cross entropy matches the oracle and names bad labels") {
  Rng rng(8);
  const Tensor z = oracle::random_matrix(rng, 6, 4, 2.0);
  const std::vector<int> y{0, 3, 1, 1, 2, 0};
  const double got = cross_entropy_loss(z, y).item();
  CHECK(got == doctest::Approx(static_cast<double>(oracle::cross_entropy(oracle::to_matrix(z), y)))
                   .epsilon(1e-12));
  const std::vector<int> bad{0, 4, 1, 1, 2, 0};
  try {
    cross_entropy_loss(z, bad);
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("label 4") != std::string::npos);
  }
}

TEST_CASE("combined loss endpoints are exact") {
  Rng rng(4);
  const Tensor teacher = oracle::random_matrix(rng, 4, 3);
  const Tensor student = oracle::random_matrix(rng, 4, 5);
  const std::vector<int> y{0, 4, 2, 3};
  LossConfig cfg{0.0, 2.0, 3, 2};
  const Tensor d = distillation_loss_from_logits(teacher, student, cfg);
  const Tensor ce = cross_entropy_loss(student, y);
  CHECK(combined_loss(d, ce, cfg).item() == ce.item());
  cfg.lambda = 1.0;
  CHECK(combined_loss(d, ce, cfg).item() == d.item());
  cfg.lambda = 0.3;
  CHECK(combined_loss(d, ce, cfg).item() == doctest::Approx(0.3 * d.item() + 0.7 * ce.item()));
}

TEST_CASE("combined loss gradient matches central differences") {
  Rng rng(10);
  for (double lambda : {0.0, 0.5, 1.0}) {
    const Tensor teacher = oracle::random_matrix(rng, 4, 3);
    const std::vector<int> y{1, 4, 0, 3};
    LossConfig cfg{lambda, 2.0, 3, 2};
    auto f = [&](const Tensor& s) {
      return combined_loss(distillation_loss_from_logits(teacher, s, cfg), cross_entropy_loss(s, y), cfg);
    };
    CHECK(oracle::gradient_error(f, oracle::random_matrix(rng, 4, 5)) < 1e-7);
  }
}

TEST_CASE("apply_bias arithmetic") {
  const Tensor p = Tensor::matrix({{0.3, 0.5, 0.2}});
  BiasCorrection bc{0.7, 2, 1};
  const Tensor q = apply_bias(p, bc);
  CHECK(q.at(0, 0) == 0.3);
  CHECK(q.at(0, 2) == doctest::Approx(0.14));

  // one old, one new: new score 0.35 > 0.3 at 0.7, 0.25 < 0.3 at 0.5
  const Tensor two = Tensor::matrix({{0.3, 0.5}});
  CHECK(apply_bias(two, {0.7, 1, 1}).at(0, 1) == doctest::Approx(0.35));
  const Tensor logits = Tensor::matrix({{std::log(0.3), std::log(0.5)}});
  CHECK(predict_from_logits(logits, {0.7, 1, 1})[0] == 1);
  CHECK(predict_from_logits(logits, {0.5, 1, 1})[0] == 0);
  CHECK_THROWS_AS(BiasCorrection({1.2, 1, 1}).validate(), ContractError);
  CHECK_THROWS_AS(apply_bias(two, {0.5, 2, 1}), DimensionError);
}

TEST_CASE("predictions break ties toward the smallest index") {
  const Tensor logits = Tensor::matrix({{1.0, 1.0, 0.0}, {0.0, 2.0, 2.0}});
  const auto pred = predict_from_logits(logits, {1.0, 3, 0});
  CHECK(pred == std::vector<int>{0, 1});
}

TEST_CASE("beta one leaves predictions unchanged") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Tensor z = oracle::random_matrix(rng, 8, 5, 3.0);
    const auto biased = predict_from_logits(z, {1.0, 3, 2});
    for (std::size_t r = 0; r < 8; ++r) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < 5; ++c)
        if (z.at(r, c) > z.at(r, best)) best = c;
      CHECK(biased[r] == static_cast<int>(best));
    }
  }
}

TEST_CASE("estimate_bias agrees with an exhaustive grid evaluation") {
  // Old-labelled rows stay correct while beta <= p_old / p_new; new-labelled
  // rows need beta > p_old / p_new. Ratios 0.55 and 0.52 against 0.45 and 0.48
  // leave beta = 0.5 as the only grid point that gets all four right.
  auto row = [](double ratio) {
    const double p0 = ratio / (1 + ratio);
    return std::vector<double>{std::log(p0), std::log(1 - p0)};
  };
  const Tensor x = Tensor::matrix({row(0.55), row(0.52), row(0.45), row(0.48)});
  const LabeledBatch val = LabeledBatch::make(x, {0, 0, 1, 1});
  const ClassifierNet net = identity_net(2);
  const auto grid = default_beta_grid();
  REQUIRE(grid.size() == 11);

  std::vector<int> correct(grid.size(), 0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t r = 0; r < 4; ++r) {
      const auto p = oracle::softmax(oracle::to_matrix(x)[r], 1.0L);
      const long double s1 = p[1] * grid[g];
      const int pred = s1 > p[0] ? 1 : 0;
      correct[g] += pred == val.labels[r];
    }
  }
  std::size_t best = 0;
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (correct[g] >= correct[best]) best = g;
  const BiasCorrection bc = estimate_bias(net, val, grid, 1);
  CHECK(bc.beta == grid[best]);
  CHECK(bc.beta == doctest::Approx(0.5));
  const auto curve = bias_accuracy_curve(net, val, grid, 1);
  for (std::size_t g = 0; g < grid.size(); ++g) CHECK(curve[g] == correct[g] / 4.0);
}

TEST_CASE("estimate_bias prefers the largest beta among ties") {
  const Tensor x = Tensor::matrix({{5.0, 0.0}, {0.0, 5.0}});
  const LabeledBatch val = LabeledBatch::make(x, {0, 1});
  const std::vector<double> grid{0.6, 0.8, 1.0};
  CHECK(estimate_bias(identity_net(2), val, grid, 1).beta == 1.0);
  CHECK_THROWS_AS(estimate_bias(identity_net(2), LabeledBatch::empty(2), grid, 1), ContractError);
}

TEST_CASE("learning-rate schedule drops once") {
  TrainSchedule s{.epochs = 10};
  CHECK(s.learning_rate(0.1, 6) == 0.1);
  CHECK(s.learning_rate(0.1, 7) == doctest::Approx(0.01));
  TrainSchedule one{.epochs = 1};
  CHECK(one.learning_rate(0.1, 0) == 0.1);
}

TEST_CASE("lambda zero training is plain cross-entropy training") {
  Rng data_rng(1);
  const LabeledBatch memory = blobs(5, {0, 1}, data_rng);
  const LabeledBatch fresh = blobs(30, {2, 3}, data_rng);
  ClassifierNet base({2, 16, 2}, 3);
  Rng grow(5);
  const ClassifierNet grown = expand_head(base, 2, grow);
  const FrozenClassifier old = snapshot(base);
  const SgdConfig opt{0.05, 2e-4, 0.9};
  const TrainSchedule schedule{.epochs = 4, .batch_size = 8};

  Rng r1(77), r2(77);
  ClassifierNet a = incremental_train(old, grown, fresh, memory, {0.0, 2.0, 2, 2}, opt, schedule, r1);
  ClassifierNet b = grown;
  train_supervised(b, concat(memory, fresh), opt, schedule, r2);
  CHECK(same_parameters(a, b));

  Rng r3(77), r4(77);
  ClassifierNet c = incremental_train(old, grown, fresh, LabeledBatch::empty(2), {0.0, 2.0, 2, 2},
                                      opt, schedule, r3);
  ClassifierNet d = grown;
  train_supervised(d, fresh, opt, schedule, r4);
  CHECK(same_parameters(c, d));
}

TEST_CASE("zero learning rate returns the input network") {
  Rng data_rng(2);
  const LabeledBatch fresh = blobs(10, {1}, data_rng);
  ClassifierNet base({2, 8, 1}, 4);
  Rng grow(1);
  ClassifierNet grown = expand_head(base, 1, grow);
  Rng rng(3);
  ClassifierNet out = incremental_train(snapshot(base), grown, fresh, LabeledBatch::empty(2),
                                        {0.5, 2.0, 1, 1}, {0.0, 2e-4, 0.9}, {.epochs = 1}, rng);
  CHECK(same_parameters(out, grown));
}

TEST_CASE("incremental training validates its inputs") {
  Rng data_rng(2);
  const LabeledBatch fresh = blobs(4, {1}, data_rng);
  ClassifierNet base({2, 8, 1}, 4);
  Rng rng(3);
  const ClassifierNet grown = expand_head(base, 1, rng);
  const LossConfig cfg{0.5, 2.0, 1, 1};
  CHECK_THROWS_AS(incremental_train(snapshot(base), base, fresh, LabeledBatch::empty(2), cfg, {},
                                    {.epochs = 1}, rng),
                  ContractError);
  const LabeledBatch wrong = blobs(4, {0}, data_rng);
  CHECK_THROWS_AS(incremental_train(snapshot(base), grown, wrong, LabeledBatch::empty(2), cfg, {},
                                    {.epochs = 1}, rng),
                  ContractError);
}

TEST_CASE("divergence raises a training error") {
  Rng data_rng(2);
  LabeledBatch data = blobs(8, {0, 1}, data_rng);
  for (double& v : data.inputs.mutable_values()) v *= 1e150;
  ClassifierNet net({2, 8, 2}, 1);
  Rng rng(1);
  CHECK_THROWS_AS(train_supervised(net, data, {1e100, 0.0, 0.9}, {.epochs = 5}, rng), TrainingError);
}

TEST_CASE("supervised training separates two blobs") {
  Rng data_rng(5);
  const LabeledBatch train = blobs(50, {0, 3}, data_rng);
  const LabeledBatch test = blobs(50, {0, 3}, data_rng);
  std::vector<int> y = train.labels;
  for (int& v : y) v = v == 3 ? 1 : 0;
  std::vector<int> yt = test.labels;
  for (int& v : yt) v = v == 3 ? 1 : 0;
  ClassifierNet net({2, 16, 2}, 2);
  Rng rng(4);
  train_supervised(net, LabeledBatch::make(train.inputs, y), {0.05, 2e-4, 0.9}, {.epochs = 10}, rng);
  CHECK(accuracy(predict(net, {1.0, 2, 0}, test.inputs), yt) >= 0.99);
}
