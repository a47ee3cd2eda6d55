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
#include <string>
#include <string_view>

#include <json.hpp>

#include "incgan/protocol.hpp"

namespace incgan {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view text);

/// One row per increment: increment,classes_seen,top1,beta,lambda,seconds.
std::string report_to_csv(const ExperimentReport& report);
nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path);
ExperimentReport read_report(const std::filesystem::path& json_path);

/// Throws FormatError when a confusion row sum differs from the class test
/// count or top1 differs from trace / total by more than 1e-12.
void validate_report(const ExperimentReport& report);

/// Shortest decimal form that round-trips a double.
std::string format_double(double value);

}  // namespace incgan
