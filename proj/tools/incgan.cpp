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

// incgan: class-incremental experiments from the command line.
//
//   incgan run --method ours-gan --parts 2 --out results
//   incgan sweep-lambda --grid 0,0.5,1
//   incgan --config bench.ini sweep-beta
//
// Every option may also come from a flat key=value file given with --config;
// flags on the command line win.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incgan/bias.hpp"
#include "incgan/checkpoint.hpp"
#include "incgan/errors.hpp"
#include "incgan/exemplar_store.hpp"
#include "incgan/replay.hpp"
#include "incgan/report.hpp"
#include "incgan/sweeps.hpp"

namespace fs = std::filesystem;
using namespace incgan;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kDivergence = 3 };

struct Options {
  DatasetSpec data;
  std::string dataset = "gaussian-mixture";
  std::string cifar_variant = "cifar10";
  ProtocolConfig protocol;
  std::string method = "ours-real";
  std::string selection = "random";
  std::string beta = "auto";
  std::optional<double> lambda;
  std::optional<std::size_t> parts_override;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::vector<double> grid;
  std::size_t gan_samples = 50;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

ProtocolConfig resolve(Options& o) {
  o.data.kind = parse_dataset_kind(o.dataset);
  o.data.cifar_variant = parse_cifar_variant(o.cifar_variant);
  ProtocolConfig cfg = o.protocol;
  cfg.seed = o.seed;
  cfg.method = parse_method(o.method);
  cfg.selection = parse_selection(o.selection);
  cfg.lambda = o.lambda;
  if (o.beta == "auto") {
    cfg.beta.reset();
  } else {
    try {
      std::size_t used = 0;
      cfg.beta = std::stod(o.beta, &used);
      if (used != o.beta.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ContractError("--beta expects 'auto' or a number, got '" + o.beta + "'");
    }
  }
  return cfg;
}

Dataset load(Options& o, ProtocolConfig& cfg) {
  Dataset data = load_dataset(o.data);
  cfg.total_classes = data.classes;
  cfg.validate();
  return data;
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void print_report(const ExperimentReport& report) {
  std::cout << "method " << report.method << ", seed " << report.seed << '\n';
  for (const auto& inc : report.increments) {
    std::cout << "  increment " << inc.increment << ": " << inc.classes_seen
              << " classes, top1 " << format_double(inc.top1) << ", beta "
              << format_double(inc.beta) << '\n';
  }
}

int cmd_run(Options& o) {
  ProtocolConfig cfg = resolve(o);
  const Dataset data = load(o, cfg);
  const ExperimentReport report = run_protocol(cfg, data);
  validate_report(report);
  const ReportFormat format = parse_report_format(o.format);
  const fs::path path = out_dir(o) / (format == ReportFormat::Csv ? "report.csv" : "report.json");
  emit_report(report, format, path);
  print_report(report);
  std::cout << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_sweep_lambda(Options& o) {
  ProtocolConfig cfg = resolve(o);
  const Dataset data = load(o, cfg);
  const auto grid = o.grid.empty() ? default_lambda_grid() : o.grid;
  const auto rows = sweep_lambda(cfg, data, grid);
  const fs::path path = out_dir(o) / "lambda_sweep.csv";
  const std::string csv = lambda_sweep_csv(rows);
  write_text(path, csv);
  std::cout << csv << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_sweep_beta(Options& o) {
  ProtocolConfig cfg = resolve(o);
  if (!cfg.uses_memory()) throw ContractError("sweep-beta needs ours-real or ours-gan");
  if (cfg.parts < 2) throw ContractError("sweep-beta needs at least two parts");
  const Dataset data = load(o, cfg);
  const ProtocolResult result = run_protocol_detailed(cfg, data);
  const auto grid = o.grid.empty() ? default_beta_grid() : o.grid;
  const auto rows = sweep_beta(result.network, result.old_classes, result.validation, result.test, grid);
  const fs::path path = out_dir(o) / "beta_sweep.csv";
  const std::string csv = beta_sweep_csv(rows);
  write_text(path, csv);
  std::cout << csv << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_gan_train(Options& o) {
  ProtocolConfig cfg = resolve(o);
  const Dataset data = load(o, cfg);
  Rng rng(cfg.seed);
  std::vector<std::size_t> widths{data.train.dim()};
  widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  widths.push_back(data.classes);
  ClassifierNet net(widths, rng.fork().next_u64());
  Rng train_rng = rng.fork();
  train_supervised(net, data.train, cfg.sgd, cfg.schedule, train_rng);
  const FrozenClassifier frozen = snapshot(net);

  Rng gan_rng = rng.fork();
  const GanPair pair = gan_train(data.train, cfg.gan, gan_rng);
  Rng replay_rng = rng.fork();
  const ExemplarStore store = replay_from_generator(pair.generator, frozen, cfg.replay,
                                                    o.gan_samples, replay_rng);
  const fs::path dir = out_dir(o);
  save_checkpoint(net, dir / "classifier");
  save_checkpoint(pair.generator, dir / "generator");
  save_store(store, dir / "replay");
  std::cout << "replay store: " << store.size() << " samples after "
            << store.manifest.attempts << " attempts\n";
  for (std::size_t k = 0; k < store.manifest.class_ids.size(); ++k) {
    std::cout << "  class " << store.manifest.class_ids[k] << ": " << store.manifest.counts[k] << '\n';
  }
  for (const auto& w : store.manifest.warnings) std::cout << "  warning: " << w << '\n';
  return kOk;
}

int cmd_dataset_gen(Options& o) {
  o.data.kind = DatasetKind::GaussianMixture;
  o.data.seed = o.seed;
  const Dataset data = load_dataset(o.data);
  const fs::path dir = out_dir(o);
  write_csv_vectors(data.train, dir / "train.csv");
  write_csv_vectors(data.test, dir / "test.csv");
  std::cout << "wrote " << data.train.size() << " train and " << data.test.size()
            << " test rows to " << dir.string() << '\n';
  return kOk;
}

int cmd_report(Options& o, const std::string& input) {
  const ExperimentReport report = read_report(input);
  validate_report(report);
  const ReportFormat format = parse_report_format(o.format);
  if (format == ReportFormat::Csv) {
    std::cout << report_to_csv(report);
  } else {
    std::cout << report_to_json(report).dump(2) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"class-incremental learning with replay and bias correction"};
  app.set_config("--config", "", "flat key=value file; command-line flags override it");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--seed", o.seed, "run seed")->capture_default_str();
  app.add_option("--dataset", o.dataset, "gaussian-mixture | csv-vectors | cifar-binary")
      ->capture_default_str();
  app.add_option("--train", o.data.train_path, "train CSV, or the CIFAR directory");
  app.add_option("--test", o.data.test_path, "test CSV");
  app.add_option("--cifar-variant", o.cifar_variant, "cifar10 | cifar100-fine");
  app.add_option("--classes", o.data.classes, "classes in a generated mixture")->capture_default_str();
  app.add_option("--dim", o.data.dim, "dimensionality of a generated mixture")->capture_default_str();
  app.add_option("--train-per-class", o.data.train_per_class)->capture_default_str();
  app.add_option("--test-per-class", o.data.test_per_class)->capture_default_str();
  app.add_option("--data-seed", o.data.seed, "mixture generation seed")->capture_default_str();
  app.add_option("--separation", o.data.separation, "neighbouring-mean spacing in sigmas")
      ->capture_default_str();
  app.add_option("--parts", o.protocol.parts)->capture_default_str();
  app.add_option("--method", o.method, "finetune | lwf | ours-real | ours-gan")->capture_default_str();
  app.add_option("--lambda", o.lambda, "distillation weight; default depends on the method");
  app.add_option("--beta", o.beta, "auto or a fixed value in [0, 1]")->capture_default_str();
  app.add_option("--temperature", o.protocol.temperature)->capture_default_str();
  app.add_option("--memory-size", o.protocol.memory_size)->capture_default_str();
  app.add_option("--selection", o.selection, "random | herding")->capture_default_str();
  app.add_option("--theta", o.protocol.replay.theta, "replay confidence threshold")
      ->capture_default_str();
  app.add_option("--topk", o.protocol.replay.top_k, "replay samples kept per class")
      ->capture_default_str();
  app.add_option("--epochs", o.protocol.schedule.epochs)->capture_default_str();
  app.add_option("--lr", o.protocol.sgd.learning_rate)->capture_default_str();
  app.add_option("--gan-iterations", o.protocol.gan.iterations)->capture_default_str();
  app.add_option("--out", o.out, "output directory")->capture_default_str();
  app.add_option("--format", o.format, "csv | json")->capture_default_str();

  auto* run = app.add_subcommand("run", "run the incremental protocol and write a report");
  auto* sl = app.add_subcommand("sweep-lambda", "accuracy over a grid of lambda values");
  sl->add_option("--grid", o.grid, "comma-separated lambda values")->delimiter(',');
  auto* sb = app.add_subcommand("sweep-beta", "accuracy over a grid of beta values");
  sb->add_option("--grid", o.grid, "comma-separated beta values")->delimiter(',');
  auto* gt = app.add_subcommand("gan-train", "train a classifier and a generator, then filter replay");
  gt->add_option("--samples", o.gan_samples, "replay target per class")->capture_default_str();
  auto* dg = app.add_subcommand("dataset-gen", "write a Gaussian mixture as train.csv / test.csv");
  std::string report_input;
  auto* rp = app.add_subcommand("report", "validate a JSON report and print it");
  rp->add_option("input", report_input, "report.json")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(o);
    if (*sl) return cmd_sweep_lambda(o);
    if (*sb) return cmd_sweep_beta(o);
    if (*gt) return cmd_gan_train(o);
    if (*dg) return cmd_dataset_gen(o);
    if (*rp) return cmd_report(o, report_input);
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const TrainingError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDivergence;
  } catch (const NumericError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kDivergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
