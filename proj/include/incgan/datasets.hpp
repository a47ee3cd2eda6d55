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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "incgan/batch.hpp"
#include "incgan/rng.hpp"

namespace incgan {

enum class DatasetKind { GaussianMixture, CsvVectors, CifarBinary };
enum class CifarVariant { Cifar10, Cifar100Fine };

std::string to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(std::string_view text);
std::string to_string(CifarVariant variant);
CifarVariant parse_cifar_variant(std::string_view text);

struct DatasetSpec {
  DatasetKind kind = DatasetKind::GaussianMixture;
  std::size_t classes = 8;
  std::size_t dim = 2;
  std::size_t train_per_class = 200;
  std::size_t test_per_class = 100;
  std::uint64_t seed = 7;
  double sigma = 1.0;
  // Distance between neighbouring means on the circle (dim == 2), or the
  // minimum pairwise distance for random placement, in units of sigma.
  double separation = 4.5;
  // csv-vectors: two files; cifar-binary: a directory in `train_path`.
  std::string train_path;
  std::string test_path;
  CifarVariant cifar_variant = CifarVariant::Cifar10;
};

struct Dataset {
  LabeledBatch train;
  LabeledBatch test;
  std::size_t classes = 0;
  std::vector<std::vector<double>> means;  // synthetic data only
};

/// Isotropic Gaussian classes. In 2-D the means sit on a circle; otherwise
/// they are drawn uniformly in a cube with a minimum pairwise separation.
Dataset make_gaussian_mixture(const DatasetSpec& spec, Rng& rng);

/// Rows of `features..., label`; a non-numeric first line is a header.
LabeledBatch read_csv_vectors(const std::filesystem::path& path);
void write_csv_vectors(const LabeledBatch& batch, const std::filesystem::path& path);

Dataset load_dataset(const DatasetSpec& spec);

}  // namespace incgan
