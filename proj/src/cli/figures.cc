// Copyright 2026 The ssdlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssdlab/cli/figures.h"

#include <fmt/core.h>

#include <cmath>
#include <map>
#include <sstream>

namespace ssdlab {
namespace {

struct CellValue {
  std::string id;
  double value = 0.0;
};

// Per-cell mean of each run's final metric, in order of first appearance.
std::vector<CellValue> FinalCellValues(const std::vector<MetricsRow>& rows) {
  if (rows.empty()) throw SchemaMismatch("results table is empty");
  std::vector<std::string> order;
  std::map<std::string, std::map<uint64_t, int64_t>> last_step;
  for (const MetricsRow& r : rows) {
    auto [it, inserted] = last_step.try_emplace(r.cell_id);
    if (inserted) order.push_back(r.cell_id);
    int64_t& s = it->second[r.seed];
    s = std::max(s, r.step);
  }
  std::map<std::string, std::map<uint64_t, std::pair<double, int>>> sums;
  for (const MetricsRow& r : rows) {
    if (r.step != last_step[r.cell_id][r.seed] || std::isnan(r.metric_value)) continue;
    auto& [sum, n] = sums[r.cell_id][r.seed];
    sum += r.metric_value;
    ++n;
  }
  std::vector<CellValue> out;
  for (const std::string& id : order) {
    double total = 0.0;
    int runs = 0;
    for (const auto& [seed, sn] : sums[id]) {
      total += sn.first / sn.second;
      ++runs;
    }
    out.push_back({id, runs ? total / runs : std::nan("")});
  }
  return out;
}

std::map<std::string, std::string> ParseCellId(const std::string& id) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(id);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const size_t eq = item.find('=');
    if (eq == std::string::npos) continue;
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

const std::string& Require(const std::map<std::string, std::string>& kv,
                           const std::string& key, const std::string& id) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw SchemaMismatch(fmt::format("cell '{}' has no axis '{}'", id, key));
  }
  return it->second;
}

}  // namespace

std::string HeatmapCsv(const std::vector<MetricsRow>& rows,
                       const std::string& x_key, const std::string& y_key) {
  std::string out = "x,y,value\n";
  for (const CellValue& c : FinalCellValues(rows)) {
    const auto kv = ParseCellId(c.id);
    out += fmt::format("{},{},{}\n", Require(kv, x_key, c.id),
                       Require(kv, y_key, c.id), c.value);
  }
  return out;
}

std::string SweepCurvesCsv(const std::vector<MetricsRow>& rows,
                           const std::string& x_key) {
  std::string out = "series,x,value\n";
  for (const CellValue& c : FinalCellValues(rows)) {
    auto kv = ParseCellId(c.id);
    const std::string x = Require(kv, x_key, c.id);
    kv.erase(x_key);
    std::string series;
    for (const auto& [k, v] : kv) {
      if (!series.empty()) series += ';';
      series += k + "=" + v;
    }
    out += fmt::format("{},{},{}\n", series, x, c.value);
  }
  return out;
}

std::string ScatterCsv(const std::vector<EmpiricalPayoffMatrix>& matrices) {
  if (matrices.empty()) throw SchemaMismatch("no payoff matrices");
  std::string out = "fear,greed,class\n";
  for (const EmpiricalPayoffMatrix& m : matrices) {
    out += fmt::format("{},{},{}\n", m.fear(), m.greed(), ClassifyMatrix(m).Name());
  }
  return out;
}

}  // namespace ssdlab
