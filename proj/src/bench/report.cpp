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

#include "incgan/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "incgan/errors.hpp"

namespace incgan {

using nlohmann::json;

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw ContractError("unknown report format '" + std::string(text) + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "increment,classes_seen,top1,beta,lambda,seconds\n";
  for (const auto& inc : report.increments) {
    out << inc.increment << ',' << inc.classes_seen << ',' << format_double(inc.top1) << ','
        << format_double(inc.beta) << ',' << format_double(inc.lambda) << ','
        << format_double(inc.seconds) << '\n';
  }
  return out.str();
}

json report_to_json(const ExperimentReport& report) {
  json increments = json::array();
  for (const auto& inc : report.increments) {
    json memory = {{"strategy", inc.memory.strategy},
                   {"size", inc.memory.size},
                   {"per_class_quota", inc.memory.per_class_quota},
                   {"attempts", inc.memory.attempts},
                   {"underfilled", inc.memory.underfilled}};
    increments.push_back({{"increment", inc.increment},
                          {"classes_seen", inc.classes_seen},
                          {"top1", inc.top1},
                          {"validation_top1", inc.validation_top1 ? json(*inc.validation_top1) : json(nullptr)},
                          {"beta", inc.beta},
                          {"lambda", inc.lambda},
                          {"seconds", inc.seconds},
                          {"per_class_accuracy", inc.per_class_accuracy},
                          {"class_test_counts", inc.class_test_counts},
                          {"confusion", {{"classes", inc.confusion.classes()},
                                         {"counts", inc.confusion.counts()}}},
                          {"memory", memory}});
  }
  return {{"format", "incgan-report"},
          {"version", 1},
          {"method", report.method},
          {"seed", report.seed},
          {"total_classes", report.total_classes},
          {"parts", report.parts},
          {"class_order", report.class_order},
          {"increments", increments}};
}

ExperimentReport report_from_json(const json& j) {
  try {
    if (j.at("format") != "incgan-report") throw FormatError("not an incgan report");
    ExperimentReport report;
    report.method = j.at("method").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.total_classes = j.at("total_classes").get<std::size_t>();
    report.parts = j.at("parts").get<std::size_t>();
    report.class_order = j.at("class_order").get<std::vector<int>>();
    for (const auto& e : j.at("increments")) {
      IncrementResult inc;
      inc.increment = e.at("increment").get<std::size_t>();
      inc.classes_seen = e.at("classes_seen").get<std::size_t>();
      inc.top1 = e.at("top1").get<double>();
      if (!e.at("validation_top1").is_null()) inc.validation_top1 = e["validation_top1"].get<double>();
      inc.beta = e.at("beta").get<double>();
      inc.lambda = e.at("lambda").get<double>();
      inc.seconds = e.at("seconds").get<double>();
      inc.per_class_accuracy = e.at("per_class_accuracy").get<std::vector<double>>();
      inc.class_test_counts = e.at("class_test_counts").get<std::vector<std::size_t>>();
      inc.confusion = ConfusionMatrix(e.at("confusion").at("classes").get<std::size_t>(),
                                      e.at("confusion").at("counts").get<std::vector<std::size_t>>());
      const auto& m = e.at("memory");
      inc.memory.strategy = m.at("strategy").get<std::string>();
      inc.memory.size = m.at("size").get<std::size_t>();
      inc.memory.per_class_quota = m.at("per_class_quota").get<std::size_t>();
      inc.memory.attempts = m.at("attempts").get<std::size_t>();
      inc.memory.underfilled = m.at("underfilled").get<std::vector<int>>();
      report.increments.push_back(std::move(inc));
    }
    return report;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  } catch (const DimensionError& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  if (format == ReportFormat::Csv) {
    out << report_to_csv(report);
  } else {
    out << report_to_json(report).dump(2) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

ExperimentReport read_report(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw IoError("cannot open " + json_path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(json_path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

void validate_report(const ExperimentReport& report) {
  for (const auto& inc : report.increments) {
    const auto& cm = inc.confusion;
    const std::string where = "increment " + std::to_string(inc.increment) + ": ";
    if (cm.classes() != inc.classes_seen || inc.class_test_counts.size() != inc.classes_seen) {
      throw FormatError(where + "confusion matrix does not cover the classes seen");
    }
    for (std::size_t c = 0; c < cm.classes(); ++c) {
      if (cm.row_sum(c) != inc.class_test_counts[c]) {
        throw FormatError(where + "row " + std::to_string(c) + " sums to " +
                          std::to_string(cm.row_sum(c)) + ", class has " +
                          std::to_string(inc.class_test_counts[c]) + " test samples");
      }
    }
    if (std::abs(cm.accuracy() - inc.top1) > 1e-12) {
      throw FormatError(where + "top1 " + format_double(inc.top1) + " differs from trace/total " +
                        format_double(cm.accuracy()));
    }
  }
}

}  // namespace incgan
