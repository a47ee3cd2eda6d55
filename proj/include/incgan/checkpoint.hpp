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

#include <filesystem>

#include "incgan/models.hpp"

// Network checkpoints: `<stem>.json` manifest (kind, layer widths, seed,
// class count, parameter names/shapes) plus `<stem>.bin`, the parameters as
// flat little-endian float64 in declaration order.
namespace incgan {

void save_checkpoint(const ClassifierNet& net, const std::filesystem::path& stem);
ClassifierNet load_classifier(const std::filesystem::path& stem);

void save_checkpoint(const GeneratorNet& net, const std::filesystem::path& stem);
GeneratorNet load_generator(const std::filesystem::path& stem);

}  // namespace incgan
