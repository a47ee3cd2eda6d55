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

#include "incgan/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "incgan/errors.hpp"

namespace incgan {

namespace {

template <typename U>
U to_little(U v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    U out = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      out = static_cast<U>((out << 8) | ((v >> (8 * i)) & 0xff));
    }
    return out;
  }
}

template <typename T, typename U>
void write_words(const std::filesystem::path& path, std::span<const T> values) {
  std::vector<std::uint8_t> bytes(values.size() * sizeof(T));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const U word = to_little(std::bit_cast<U>(values[i]));
    std::memcpy(bytes.data() + i * sizeof(T), &word, sizeof(T));
  }
  write_bytes(path, bytes);
}

template <typename T, typename U>
std::vector<T> read_words(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() % sizeof(T) != 0) {
    throw FormatError(path.string() + ": length " + std::to_string(bytes.size()) +
                      " is not a multiple of " + std::to_string(sizeof(T)));
  }
  std::vector<T> out(bytes.size() / sizeof(T));
  for (std::size_t i = 0; i < out.size(); ++i) {
    U word;
    std::memcpy(&word, bytes.data() + i * sizeof(T), sizeof(T));
    out[i] = std::bit_cast<T>(to_little(word));
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void write_f64_le(const std::filesystem::path& path, std::span<const double> values) {
  write_words<double, std::uint64_t>(path, values);
}

std::vector<double> read_f64_le(const std::filesystem::path& path) {
  return read_words<double, std::uint64_t>(path);
}

void write_i32_le(const std::filesystem::path& path, std::span<const std::int32_t> values) {
  write_words<std::int32_t, std::uint32_t>(path, values);
}

std::vector<std::int32_t> read_i32_le(const std::filesystem::path& path) {
  return read_words<std::int32_t, std::uint32_t>(path);
}

}  // namespace incgan
