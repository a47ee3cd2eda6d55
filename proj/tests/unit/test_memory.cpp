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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "incgan/errors.hpp"
#include "incgan/exemplars.hpp"
#include "incgan/gan.hpp"
#include "incgan/ops.hpp"
#include "incgan/replay.hpp"
#include "oracles.hpp"

using namespace incgan;

namespace {

LabeledBatch labelled(Rng& rng, std::vector<std::size_t> sizes, std::size_t dim = 2) {
  std::vector<double> x;
  std::vector<int> y;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    for (std::size_t i = 0; i < sizes[c]; ++i) {
      for (std::size_t j = 0; j < dim; ++j) x.push_back(rng.normal(static_cast<double>(c) * 4, 1));
      y.push_back(static_cast<int>(c));
    }
  }
  return LabeledBatch::make(Tensor::from({y.size(), dim}, x), y);
}

ScoredBatch scored(std::vector<int> labels, std::vector<double> conf) {
  ScoredBatch s;
  const std::size_t n = labels.size();
  std::vector<double> x(n);
  std::iota(x.begin(), x.end(), 0.0);
  s.batch = LabeledBatch::make(Tensor::from({n, 1}, x), std::move(labels), SampleSource::GanReplay);
  s.confidence = std::move(conf);
  s.generation_index.resize(n);
  std::iota(s.generation_index.begin(), s.generation_index.end(), std::size_t{0});
  return s;
}

}  // namespace

TEST_CASE("budget quota") {
  CHECK(ExemplarBudget{2000}.per_class_quota(50) == 40);
  CHECK(ExemplarBudget{40}.per_class_quota(3) == 13);
  CHECK(ExemplarBudget{40, 8}.per_class_quota(4) == 5);
}

TEST_CASE("random selection") {
  Rng data_rng(1);
  const LabeledBatch data = labelled(data_rng, {10, 3});
  Rng a(5), b(5);
  const ExemplarStore s = select_random(data, ExemplarBudget{4}, a);
  CHECK(s.count(0) == 2);
  CHECK(s.count(1) == 2);
  std::set<double> firsts;
  for (std::size_t i = 0; i < s.size(); ++i) firsts.insert(s.samples.inputs.at(i, 0));
  CHECK(firsts.size() == 4);
  const ExemplarStore t = select_random(data, ExemplarBudget{4}, b);
  CHECK(std::equal(s.samples.inputs.values().begin(), s.samples.inputs.values().end(),
                   t.samples.inputs.values().begin()));

  Rng c(1);
  const ExemplarStore all = select_random(data, ExemplarBudget{100}, c);
  CHECK(all.count(0) == 10);
  CHECK(all.count(1) == 3);
  CHECK(all.size() <= 100);
  CHECK_THROWS_AS(select_random(LabeledBatch::empty(2), ExemplarBudget{4}, c), ContractError);
}

TEST_CASE("herding first pick is nearest the class mean") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor f = l2_normalize_rows(oracle::random_matrix(rng, 9, 3));
    std::vector<double> mu(3, 0.0);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 3; ++j) mu[j] += f.at(i, j) / 9;
    std::size_t best = 0;
    double best_d = 1e300;
    for (std::size_t i = 0; i < 9; ++i) {
      double dd = 0;
      for (std::size_t j = 0; j < 3; ++j) dd += (f.at(i, j) - mu[j]) * (f.at(i, j) - mu[j]);
      if (dd < best_d) best_d = dd, best = i;
    }
    CHECK(herding_order(f, 3).front() == best);
  }
}

TEST_CASE("herding matches the exhaustive greedy oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng.index(8), q = 1 + rng.index(4);
    const Tensor f = l2_normalize_rows(oracle::random_matrix(rng, k, 2));
    CHECK(herding_order(f, q) == oracle::herding(f, q));
  }
  const Tensor five = l2_normalize_rows(Tensor::matrix({{1, 0.2}, {0.3, 1}, {-1, 0.5}, {0.7, 0.7}, {0.1, -1}}));
  CHECK(herding_order(five, 3) == oracle::herding(five, 3));
  // two points are equidistant from their midpoint; the lower index goes first
  const Tensor pair = l2_normalize_rows(Tensor::matrix({{1, 0.3}, {0.2, 1}}));
  CHECK(herding_order(pair, 2) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("herding store covers requested classes and warns on empty ones") {
  Rng rng(2);
  const LabeledBatch data = labelled(rng, {1, 6});
  const Tensor f = l2_normalize_rows(data.inputs);
  const std::vector<int> classes{0, 1, 2};
  const ExemplarStore s = select_herding(data, f, ExemplarBudget{6}, classes);
  CHECK(s.count(0) == 1);
  CHECK(s.count(1) == 2);
  CHECK(s.manifest.warnings.size() == 1);
  CHECK(s.manifest.warnings[0].find("class 2") != std::string::npos);
  CHECK_THROWS_AS(select_herding(data, Tensor::zeros({3, 2}), ExemplarBudget{6}), DimensionError);
}

TEST_CASE("filter_replay rules") {
  SUBCASE("worked example") {
    const ScoredBatch s = scored({0, 0, 0, 0, 0, 0}, {0.90, 0.99, 0.40, 0.97, 0.50, 0.96});
    const ScoredBatch out = filter_replay(s, ReplayFilter{0.95, 2});
    REQUIRE(out.size() == 2);
    CHECK(out.confidence == std::vector<double>{0.99, 0.97});
    CHECK(out.generation_index == std::vector<std::size_t>{1, 3});
  }
  SUBCASE("theta zero and a large K keep everything") {
    const ScoredBatch s = scored({1, 0, 1, 0}, {0.3, 0.8, 0.8, 0.6});
    const ScoredBatch out = filter_replay(s, ReplayFilter{0.0, 10});
    CHECK(out.size() == 4);
    CHECK(out.generation_index == std::vector<std::size_t>{1, 2, 3, 0});
  }
  SUBCASE("threshold is strict") {
    const ScoredBatch out = filter_replay(scored({0, 1}, {0.5, 0.51}), ReplayFilter{0.5, 5});
    CHECK(out.batch.labels == std::vector<int>{1});
  }
  CHECK_THROWS_AS(ReplayFilter({1.0, 5}).validate(), ContractError);
  CHECK_THROWS_AS(ReplayFilter({0.5, 0}).validate(), ContractError);
}

TEST_CASE("filter_replay properties over random batches") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.index(40);
    std::vector<int> labels(n);
    std::vector<double> conf(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(rng.index(4));
      conf[i] = std::round(rng.uniform() * 20) / 20;  // coarse values force ties
    }
    const ReplayFilter filter{rng.uniform() * 0.9, 1 + rng.index(6)};
    const ScoredBatch once = filter_replay(scored(labels, conf), filter);
    const ScoredBatch twice = filter_replay(once, filter);
    CHECK(twice.generation_index == once.generation_index);
    std::map<int, std::size_t> per_class;
    for (std::size_t i = 0; i < once.size(); ++i) {
      CHECK(once.confidence[i] > filter.theta);
      CHECK(++per_class[once.batch.labels[i]] <= filter.top_k);
      if (i > 0) {
        const bool ordered = once.confidence[i - 1] > once.confidence[i] ||
                             (once.confidence[i - 1] == once.confidence[i] &&
                              once.generation_index[i - 1] < once.generation_index[i]);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("pseudo-labels follow a linear classifier's argmax") {
  Rng rng(4);
  const Tensor w = oracle::random_matrix(rng, 2, 3);
  const Tensor b = Tensor::from({3}, {0.1, -0.2, 0.3});
  ClassifierNet net(Mlp::from_parameters({2, 3}, {w, b}, "classifier"));
  const FrozenClassifier old = snapshot(net);
  const Tensor x = oracle::random_matrix(rng, 50, 2, 3.0);
  const ScoredBatch s = label_samples(x, old, 10);
  for (std::size_t r = 0; r < 50; ++r) {
    std::vector<long double> z(3);
    for (std::size_t c = 0; c < 3; ++c)
      z[c] = b[c] + x.at(r, 0) * w.at(0, c) + x.at(r, 1) * w.at(1, c);
    const auto p = oracle::softmax(z, 1.0L);
    const auto arg = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
    CHECK(s.batch.labels[r] == arg);
    CHECK(s.confidence[r] == doctest::Approx(static_cast<double>(p[arg])).epsilon(1e-12));
    CHECK(s.generation_index[r] == 10 + r);
  }
  // relabelling the stored samples reproduces the labels
  CHECK(label_samples(s.batch.inputs, old).batch.labels == s.batch.labels);
}

TEST_CASE("single-class pseudo-labels") {
  Rng rng(1);
  ClassifierNet net({2, 4, 1}, 1);
  GeneratorNet gen(2, {4}, 2, rng);
  const ScoredBatch s = pseudo_label(gen, snapshot(net), 20, rng);
  for (int y : s.batch.labels) CHECK(y == 0);
  for (double c : s.confidence) CHECK(c == 1.0);
}

TEST_CASE("constant critic gives the generator no gradient") {
  Rng rng(2);
  std::vector<Tensor> tensors{Tensor::zeros({2, 4}), Tensor::zeros({4}), Tensor::zeros({4, 1}),
                              Tensor::full({1}, 0.7)};
  CriticNet critic(Mlp::from_parameters({2, 4, 1}, tensors, "critic"));
  GeneratorNet gen(3, {8}, 2, rng);
  generator_loss(critic, gen, gen.sample_noise(16, rng)).backward();
  double norm = 0;
  for (const auto& p : gen.parameters())
    for (double g : p.tensor.grad()) norm += g * g;
  CHECK(std::sqrt(norm) <= 1e-9);
}

TEST_CASE("critic weights stay clipped after every update") {
  Rng data_rng(3);
  const LabeledBatch data = labelled(data_rng, {50, 50});
  GanConfig cfg;
  cfg.iterations = 20;
  cfg.hidden = {16};
  std::size_t updates = 0;
  double worst = 0;
  Rng rng(1);
  gan_train(data, cfg, rng, [&](const CriticNet& c, std::size_t) {
    ++updates;
    worst = std::max(worst, c.max_abs_weight());
  });
  CHECK(updates == 20 * cfg.critic_iterations);
  CHECK(worst <= cfg.clip);
}

TEST_CASE("gan training is deterministic per seed") {
  Rng data_rng(3);
  const LabeledBatch data = labelled(data_rng, {30, 30});
  GanConfig cfg;
  cfg.iterations = 15;
  cfg.hidden = {8};
  Rng a(9), b(9);
  const GanPair x = gan_train(data, cfg, a);
  const GanPair y = gan_train(data, cfg, b);
  for (std::size_t i = 0; i < x.generator.mlp().parameters().size(); ++i) {
    const auto u = x.generator.mlp().parameters()[i].tensor.values();
    const auto v = y.generator.mlp().parameters()[i].tensor.values();
    CHECK(std::equal(u.begin(), u.end(), v.begin()));
  }
  GanConfig bad = cfg;
  bad.clip = 0;
  CHECK_THROWS_AS(gan_train(data, bad, a), ContractError);
  CHECK_THROWS_AS(gan_train(LabeledBatch::empty(2), cfg, a), ContractError);
}

TEST_CASE("generator matches the first two moments of a 1-D normal") {
  Rng rng(11);
  std::vector<double> x(2000);
  for (double& v : x) v = rng.normal();
  const LabeledBatch data = LabeledBatch::make(Tensor::from({x.size(), 1}, x), std::vector<int>(x.size(), 0));
  GanConfig cfg;
  cfg.iterations = 3000;
  const GanPair pair = gan_train(data, cfg, rng);
  Rng sample_rng(5);
  const Tensor out = pair.generator.forward(pair.generator.sample_noise(1000, sample_rng));
  double mean = 0, sq = 0;
  for (double v : out.values()) mean += v / 1000;
  for (double v : out.values()) sq += (v - mean) * (v - mean) / 999;
  double dmean = 0, dsq = 0;
  for (double v : x) dmean += v / x.size();
  for (double v : x) dsq += (v - dmean) * (v - dmean) / (x.size() - 1);
  CHECK(std::abs(mean - dmean) <= 0.25);
  CHECK(std::abs(std::sqrt(sq / dsq) - 1.0) <= 0.5);
}

TEST_CASE("replay from a generator") {
  Rng data_rng(6);
  const LabeledBatch data = labelled(data_rng, {100, 100});
  ClassifierNet net({2, 16, 2}, 1);
  {
    // a hand-set classifier that splits the two blobs at x0 + x1 = 4
    auto& p = net.parameters();
    for (auto& t : p)
      for (double& v : t.tensor.mutable_values()) v = 0;
    p[0].tensor.mutable_values()[0] = 1;
    p[0].tensor.mutable_values()[16] = 1;
    p[2].tensor.mutable_values()[1] = 2;
    p[3].tensor.mutable_values()[1] = -8;
  }
  const FrozenClassifier old = snapshot(net);
  GanConfig cfg;
  cfg.iterations = 300;
  cfg.hidden = {16};
  Rng rng(2);
  const GanPair pair = gan_train(data, cfg, rng);

  SUBCASE("theta zero fills both classes") {
    const ExemplarStore s = replay_from_generator(pair.generator, old, ReplayFilter{0.0, 50}, 20, rng);
    CHECK(s.count(0) == 20);
    CHECK(s.count(1) == 20);
    CHECK(s.manifest.underfilled.empty());
    CHECK(s.manifest.attempts >= 256);
    CHECK(s.manifest.strategy == "gan");
  }
  SUBCASE("K caps the per-class yield") {
    const ExemplarStore s = replay_from_generator(pair.generator, old, ReplayFilter{0.0, 5}, 20, rng);
    CHECK(s.count(0) == 5);
    CHECK(s.count(1) == 5);
  }
  SUBCASE("no attempts leaves an empty store with a full manifest") {
    const ExemplarStore s =
        replay_from_generator(pair.generator, old, ReplayFilter{0.5, 50, 0}, 10, rng);
    CHECK(s.size() == 0);
    CHECK(s.manifest.attempts == 0);
    CHECK(s.manifest.underfilled == std::vector<int>{0, 1});
    CHECK(s.manifest.warnings.size() == 2);
  }
}

TEST_CASE("store trim, merge and disk round trip") {
  Rng rng(8);
  ExemplarStore a = select_random(labelled(rng, {6, 6}), ExemplarBudget{8}, rng);
  ExemplarStore b = select_random(labelled(rng, {0, 0, 5}), ExemplarBudget{2}, rng);
  a.trim_per_class(3);
  CHECK(a.count(0) == 3);
  a.merge(b);
  CHECK(a.count(2) == 2);
  CHECK(a.size() == 8);

  const auto dir = std::filesystem::temp_directory_path() / "incgan_test_memory" / "store";
  std::filesystem::remove_all(dir);
  save_store(a, dir);
  const ExemplarStore back = load_store(dir);
  CHECK(back.samples.labels == a.samples.labels);
  CHECK(std::equal(back.samples.inputs.values().begin(), back.samples.inputs.values().end(),
                   a.samples.inputs.values().begin()));
  CHECK(back.manifest.counts == a.manifest.counts);
  CHECK(back.manifest.strategy == "random");
  CHECK_THROWS(load_store(dir / "nope"));
}
