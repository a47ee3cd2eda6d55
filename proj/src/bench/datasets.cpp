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

#include "incgan/datasets.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "incgan/cifar.hpp"
#include "incgan/errors.hpp"
#include "incgan/report.hpp"

namespace incgan {

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::GaussianMixture: return "gaussian-mixture";
    case DatasetKind::CsvVectors: return "csv-vectors";
    case DatasetKind::CifarBinary: return "cifar-binary";
  }
  return "unknown";
}

DatasetKind parse_dataset_kind(std::string_view text) {
  if (text == "gaussian-mixture") return DatasetKind::GaussianMixture;
  if (text == "csv-vectors") return DatasetKind::CsvVectors;
  if (text == "cifar-binary") return DatasetKind::CifarBinary;
  throw ContractError("unknown dataset kind '" + std::string(text) + "'");
}

std::string to_string(CifarVariant variant) {
  return variant == CifarVariant::Cifar10 ? "cifar10" : "cifar100-fine";
}

CifarVariant parse_cifar_variant(std::string_view text) {
  if (text == "cifar10") return CifarVariant::Cifar10;
  if (text == "cifar100-fine" || text == "cifar100") return CifarVariant::Cifar100Fine;
  throw ContractError("unknown CIFAR variant '" + std::string(text) + "'");
}

namespace {

constexpr int kPlacementRetries = 1000;

std::vector<std::vector<double>> circle_means(std::size_t k, double spacing) {
  const double radius = spacing / (2.0 * std::sin(std::numbers::pi / static_cast<double>(k)));
  std::vector<std::vector<double>> means;
  for (std::size_t c = 0; c < k; ++c) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(k);
    means.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return means;
}

std::vector<std::vector<double>> random_means(std::size_t k, std::size_t dim, double spacing,
                                              Rng& rng) {
  // A cube roomy enough for k points at the requested spacing.
  const double side = spacing * std::max(2.0, std::pow(static_cast<double>(k), 1.0 / dim) * 1.5);
  std::vector<std::vector<double>> means;
  while (means.size() < k) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt) {
      std::vector<double> m(dim);
      for (double& v : m) v = (rng.uniform() - 0.5) * side;
      placed = true;
      for (const auto& other : means) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) d2 += (m[j] - other[j]) * (m[j] - other[j]);
        if (std::sqrt(d2) < spacing) {
          placed = false;
          break;
        }
      }
      if (placed) means.push_back(std::move(m));
    }
    if (!placed) {
      throw FormatError("could not place " + std::to_string(k) + " means with separation " +
                        std::to_string(spacing) + " after " + std::to_string(kPlacementRetries) +
                        " retries");
    }
  }
  return means;
}

LabeledBatch draw(const std::vector<std::vector<double>>& means, std::size_t per_class,
                  double sigma, Rng& rng) {
  const std::size_t k = means.size(), dim = means.front().size();
  std::vector<double> values;
  std::vector<int> labels;
  values.reserve(k * per_class * dim);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t j = 0; j < dim; ++j) values.push_back(rng.normal(means[c][j], sigma));
      labels.push_back(static_cast<int>(c));
    }
  }
  return LabeledBatch::make(Tensor::from({k * per_class, dim}, std::move(values)), std::move(labels));
}

}  // namespace

Dataset make_gaussian_mixture(const DatasetSpec& spec, Rng& rng) {
  if (spec.classes < 2) throw ContractError("a Gaussian mixture needs at least 2 classes");
  if (spec.dim < 2) throw ContractError("a Gaussian mixture needs at least 2 dimensions");
  if (spec.test_per_class == 0) throw ContractError("every class needs a test sample");
  if (!(spec.sigma > 0.0)) throw ContractError("sigma must be positive");
  const double spacing = spec.separation * spec.sigma;
  Dataset data;
  data.classes = spec.classes;
  data.means = spec.dim == 2 ? circle_means(spec.classes, spacing)
                             : random_means(spec.classes, spec.dim, spacing, rng);
  data.train = draw(data.means, spec.train_per_class, spec.sigma, rng);
  data.test = draw(data.means, spec.test_per_class, spec.sigma, rng);
  return data;
}

LabeledBatch read_csv_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> values;
  std::vector<int> labels;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    if (row.size() < 2) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": need features and a label");
    }
    if (dim == 0) dim = row.size() - 1;
    if (row.size() - 1 != dim) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(dim + 1) + " fields, got " + std::to_string(row.size()));
    }
    const double label = row.back();
    if (label < 0 || label != std::floor(label)) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": bad label");
    }
    values.insert(values.end(), row.begin(), row.end() - 1);
    labels.push_back(static_cast<int>(label));
  }
  if (labels.empty()) throw FormatError(path.string() + ": no samples");
  Tensor inputs = Tensor::from({labels.size(), dim}, std::move(values));
  return LabeledBatch::make(std::move(inputs), std::move(labels));
}

void write_csv_vectors(const LabeledBatch& batch, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  const std::size_t d = batch.dim();
  for (std::size_t j = 0; j < d; ++j) out << 'x' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out << format_double(batch.inputs.at(i, j)) << ',';
    out << batch.labels[i] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Dataset load_dataset(const DatasetSpec& spec) {
  switch (spec.kind) {
    case DatasetKind::GaussianMixture: {
      Rng rng(spec.seed);
      return make_gaussian_mixture(spec, rng);
    }
    case DatasetKind::CsvVectors: {
      Dataset data;
      data.train = read_csv_vectors(spec.train_path);
      data.test = read_csv_vectors(spec.test_path);
      if (data.train.dim() != data.test.dim()) throw FormatError("train and test dimensions differ");
      const auto tc = data.train.classes();
      data.classes = static_cast<std::size_t>(tc.back() + 1);
      for (std::size_t c = 0; c < data.classes; ++c) {
        if (data.test.rows_of(static_cast<int>(c)).empty()) {
          throw FormatError("class " + std::to_string(c) + " has no test sample");
        }
      }
      return data;
    }
    case DatasetKind::CifarBinary:
      return load_cifar_dataset(spec.train_path, spec.cifar_variant);
  }
  throw ContractError("unknown dataset kind");
}

}  // namespace incgan
