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

#include "incgan/sweeps.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "incgan/bias.hpp"
#include "incgan/errors.hpp"
#include "incgan/report.hpp"

namespace incgan {

std::vector<double> default_lambda_grid() { return {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}; }

std::vector<LambdaSweepRow> sweep_lambda(const ProtocolConfig& base, const Dataset& data,
                                         std::span<const double> grid) {
  if (base.method != Method::OursReal && base.method != Method::OursGan) {
    throw ContractError("lambda sweeps need a method that combines both losses");
  }
  std::vector<LambdaSweepRow> rows;
  for (double lambda : grid) {
    ProtocolConfig cfg = base;
    cfg.lambda = lambda;
    const ExperimentReport report = run_protocol(cfg, data);
    const auto& last = report.increments.back();
    rows.push_back({lambda, last.validation_top1.value_or(std::numeric_limits<double>::quiet_NaN()),
                    last.top1});
  }
  return rows;
}

namespace {

void flag_best(std::vector<BetaSweepRow>& rows, double BetaSweepRow::*score,
               bool BetaSweepRow::*flag) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].*score > rows[best].*score ||
        (rows[i].*score == rows[best].*score && rows[i].beta > rows[best].beta)) {
      best = i;
    }
  }
  if (!rows.empty()) rows[best].*flag = true;
}

}  // namespace

std::vector<BetaSweepRow> sweep_beta(const ClassifierNet& net, std::size_t old_classes,
                                     const LabeledBatch& validation, const LabeledBatch& test,
                                     std::span<const double> grid) {
  for (double beta : grid) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw ContractError("beta grid values must lie in [0, 1]");
  }
  const auto val = bias_accuracy_curve(net, validation, grid, old_classes);
  const auto tst = bias_accuracy_curve(net, test, grid, old_classes);
  std::vector<BetaSweepRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({grid[i], val[i], tst[i], false, false});
  flag_best(rows, &BetaSweepRow::validation, &BetaSweepRow::best_validation);
  flag_best(rows, &BetaSweepRow::test, &BetaSweepRow::best_test);
  return rows;
}

std::string lambda_sweep_csv(std::span<const LambdaSweepRow> rows) {
  std::ostringstream out;
  out << "lambda,validation,test\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda) << ',' << format_double(r.validation) << ','
        << format_double(r.test) << '\n';
  }
  return out.str();
}

std::string beta_sweep_csv(std::span<const BetaSweepRow> rows) {
  std::ostringstream out;
  out << "beta,validation,test,best_validation,best_test\n";
  for (const auto& r : rows) {
    out << format_double(r.beta) << ',' << format_double(r.validation) << ','
        << format_double(r.test) << ',' << (r.best_validation ? 1 : 0) << ','
        << (r.best_test ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace incgan
