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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "incgan/batch.hpp"
#include "incgan/datasets.hpp"

namespace incgan {

inline constexpr std::size_t kCifarPixels = 3072;

/// Bytes per record: 1 + 3072 for CIFAR-10, 2 + 3072 for CIFAR-100.
std::size_t cifar_record_size(CifarVariant variant);

struct CifarRecord {
  std::uint8_t coarse_label = 0;  // CIFAR-100 only
  std::uint8_t label = 0;         // CIFAR-10 label or CIFAR-100 fine label
  std::array<std::uint8_t, kCifarPixels> pixels{};
};

std::vector<CifarRecord> decode_cifar(std::span<const std::uint8_t> bytes, CifarVariant variant);
std::vector<std::uint8_t> encode_cifar(std::span<const CifarRecord> records, CifarVariant variant);

/// One binary file as a batch; pixels scaled to [0, 1], fine labels.
LabeledBatch load_cifar_binary(const std::filesystem::path& path, CifarVariant variant);

/// Standard file names under `dir`: data_batch_{1..5}.bin / test_batch.bin
/// (CIFAR-10) or train.bin / test.bin (CIFAR-100).
Dataset load_cifar_dataset(const std::filesystem::path& dir, CifarVariant variant);

}  // namespace incgan
