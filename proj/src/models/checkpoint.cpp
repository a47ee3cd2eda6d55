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

#include "incgan/checkpoint.hpp"

#include <fstream>

#include <json.hpp>

#include "incgan/binary_io.hpp"
#include "incgan/errors.hpp"

namespace incgan {

namespace {

using nlohmann::json;

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
  auto p = stem;
  p += ext;
  return p;
}

json describe(const Mlp& mlp, const std::filesystem::path& stem) {
  json params = json::array();
  for (const auto& p : mlp.parameters()) {
    params.push_back({{"name", p.name}, {"shape", p.tensor.shape()}});
  }
  return {{"format", "incgan-checkpoint"},
          {"version", 1},
          {"widths", mlp.widths()},
          {"dtype", "float64"},
          {"byte_order", "little"},
          {"blob", with_ext(stem, ".bin").filename().string()},
          {"parameters", params}};
}

void write_mlp(const Mlp& mlp, const json& manifest, const std::filesystem::path& stem) {
  std::vector<double> blob;
  for (const auto& p : mlp.parameters()) {
    blob.insert(blob.end(), p.tensor.values().begin(), p.tensor.values().end());
  }
  write_f64_le(with_ext(stem, ".bin"), blob);
  std::ofstream out(with_ext(stem, ".json"));
  if (!out) throw IoError("cannot write " + with_ext(stem, ".json").string());
  out << manifest.dump(2) << '\n';
}

json read_manifest(const std::filesystem::path& stem) {
  std::ifstream in(with_ext(stem, ".json"));
  if (!in) throw IoError("cannot open " + with_ext(stem, ".json").string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(with_ext(stem, ".json").string() + ": " + e.what());
  }
}

Mlp read_mlp(const json& manifest, const std::filesystem::path& stem, const std::string& prefix) {
  try {
    if (manifest.at("format") != "incgan-checkpoint") throw FormatError("not an incgan checkpoint");
    auto widths = manifest.at("widths").get<std::vector<std::size_t>>();
    const auto blob = read_f64_le(stem.parent_path() / manifest.at("blob").get<std::string>());
    std::vector<Tensor> tensors;
    std::size_t offset = 0;
    for (const auto& p : manifest.at("parameters")) {
      Shape shape = p.at("shape").get<Shape>();
      const std::size_t n = shape_size(shape);
      if (offset + n > blob.size()) {
        throw FormatError("parameter blob too short: need " + std::to_string(offset + n) +
                          " values, have " + std::to_string(blob.size()));
      }
      tensors.push_back(Tensor::from(std::move(shape),
                                     std::vector<double>(blob.begin() + offset, blob.begin() + offset + n)));
      offset += n;
    }
    if (offset != blob.size()) {
      throw FormatError("parameter blob has " + std::to_string(blob.size() - offset) +
                        " trailing values");
    }
    return Mlp::from_parameters(std::move(widths), std::move(tensors), prefix);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint manifest: ") + e.what());
  }
}

}  // namespace

void save_checkpoint(const ClassifierNet& net, const std::filesystem::path& stem) {
  json manifest = describe(net.mlp(), stem);
  manifest["kind"] = "classifier";
  manifest["seed"] = net.seed();
  manifest["class_count"] = net.class_count();
  write_mlp(net.mlp(), manifest, stem);
}

ClassifierNet load_classifier(const std::filesystem::path& stem) {
  const json manifest = read_manifest(stem);
  if (manifest.value("kind", "") != "classifier") throw FormatError("checkpoint is not a classifier");
  ClassifierNet net(read_mlp(manifest, stem, "classifier"), manifest.value("seed", std::uint64_t{0}));
  if (net.class_count() != manifest.value("class_count", std::size_t{0})) {
    throw FormatError("class_count disagrees with the head width");
  }
  return net;
}

void save_checkpoint(const GeneratorNet& net, const std::filesystem::path& stem) {
  json manifest = describe(net.mlp(), stem);
  manifest["kind"] = "generator";
  manifest["noise_dim"] = net.noise_dim();
  manifest["output_shift"] = net.output_shift();
  manifest["output_scale"] = net.output_scale();
  write_mlp(net.mlp(), manifest, stem);
}

GeneratorNet load_generator(const std::filesystem::path& stem) {
  const json manifest = read_manifest(stem);
  if (manifest.value("kind", "") != "generator") throw FormatError("checkpoint is not a generator");
  Rng unused(0);
  Mlp mlp = read_mlp(manifest, stem, "generator");
  std::vector<std::size_t> hidden(mlp.widths().begin() + 1, mlp.widths().end() - 1);
  GeneratorNet gen(mlp.input_dim(), hidden, mlp.output_dim(), unused);
  gen.mlp() = std::move(mlp);
  try {
    gen.set_output_affine(manifest.at("output_shift").get<std::vector<double>>(),
                          manifest.at("output_scale").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("generator manifest: ") + e.what());
  }
  return gen;
}

}  // namespace incgan
