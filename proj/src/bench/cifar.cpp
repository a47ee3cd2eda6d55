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

#include "incgan/cifar.hpp"

#include <algorithm>

#include "incgan/binary_io.hpp"
#include "incgan/errors.hpp"

namespace incgan {

std::size_t cifar_record_size(CifarVariant variant) {
  return (variant == CifarVariant::Cifar10 ? 1 : 2) + kCifarPixels;
}

std::vector<CifarRecord> decode_cifar(std::span<const std::uint8_t> bytes, CifarVariant variant) {
  const std::size_t rec = cifar_record_size(variant);
  if (bytes.empty()) throw FormatError("CIFAR file holds no records");
  if (bytes.size() % rec != 0) {
    const std::size_t whole = bytes.size() / rec;
    throw FormatError("CIFAR file length " + std::to_string(bytes.size()) +
                      " is not a multiple of the " + std::to_string(rec) +
                      "-byte record; expected " + std::to_string((whole + 1) * rec) +
                      " bytes, partial record at byte offset " + std::to_string(whole * rec));
  }
  const std::size_t header = rec - kCifarPixels;
  const int max_label = variant == CifarVariant::Cifar10 ? 9 : 99;
  std::vector<CifarRecord> out(bytes.size() / rec);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t* r = bytes.data() + i * rec;
    if (variant == CifarVariant::Cifar100Fine) {
      out[i].coarse_label = r[0];
      out[i].label = r[1];
    } else {
      out[i].label = r[0];
    }
    if (out[i].label > max_label) {
      throw FormatError("label " + std::to_string(out[i].label) + " out of range at byte offset " +
                        std::to_string(i * rec + header - 1));
    }
    std::copy_n(r + header, kCifarPixels, out[i].pixels.begin());
  }
  return out;
}

std::vector<std::uint8_t> encode_cifar(std::span<const CifarRecord> records, CifarVariant variant) {
  const std::size_t rec = cifar_record_size(variant);
  std::vector<std::uint8_t> out;
  out.reserve(records.size() * rec);
  for (const auto& r : records) {
    if (variant == CifarVariant::Cifar100Fine) out.push_back(r.coarse_label);
    out.push_back(r.label);
    out.insert(out.end(), r.pixels.begin(), r.pixels.end());
  }
  return out;
}

LabeledBatch load_cifar_binary(const std::filesystem::path& path, CifarVariant variant) {
  std::vector<CifarRecord> records;
  try {
    records = decode_cifar(read_bytes(path), variant);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  std::vector<double> values(records.size() * kCifarPixels);
  std::vector<int> labels(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    labels[i] = records[i].label;
    for (std::size_t p = 0; p < kCifarPixels; ++p) {
      values[i * kCifarPixels + p] = records[i].pixels[p] / 255.0;
    }
  }
  return LabeledBatch::make(Tensor::from({records.size(), kCifarPixels}, std::move(values)),
                            std::move(labels));
}

Dataset load_cifar_dataset(const std::filesystem::path& dir, CifarVariant variant) {
  Dataset data;
  if (variant == CifarVariant::Cifar10) {
    data.train = LabeledBatch::empty(kCifarPixels);
    for (int i = 1; i <= 5; ++i) {
      data.train = concat(data.train,
                          load_cifar_binary(dir / ("data_batch_" + std::to_string(i) + ".bin"), variant));
    }
    data.test = load_cifar_binary(dir / "test_batch.bin", variant);
    data.classes = 10;
  } else {
    data.train = load_cifar_binary(dir / "train.bin", variant);
    data.test = load_cifar_binary(dir / "test.bin", variant);
    data.classes = 100;
  }
  return data;
}

}  // namespace incgan
