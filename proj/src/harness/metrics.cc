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

#include "ssdlab/harness/metrics.h"

#include <fmt/core.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ssdlab {
namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ToDouble(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error(fmt::format("bad number '{}'", s));
  }
  return v;
}

// NaN prints as "nan" whatever its sign bit.
double Canonical(double v) { return std::isnan(v) ? std::numeric_limits<double>::quiet_NaN() : v; }

}  // namespace

std::string FormatMetricsRow(const MetricsRow& r) {
  if (r.cell_id.find(',') != std::string::npos) {
    throw std::invalid_argument("cell_id must not contain commas");
  }
  return fmt::format("{},{},{},{},{},{},{},{},{}", r.cell_id, r.seed, r.step,
                     r.agent, Canonical(r.ret), r.metric_name, Canonical(r.metric_value),
                     Canonical(r.epsilon), Canonical(r.loss));
}

std::string FormatMetricsCsv(const std::vector<MetricsRow>& rows) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const MetricsRow& r : rows) {
    out += FormatMetricsRow(r);
    out += '\n';
  }
  return out;
}

void WriteMetricsCsv(const std::vector<MetricsRow>& rows,
                     const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << FormatMetricsCsv(rows);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
}

std::vector<MetricsRow> ParseMetricsCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw std::runtime_error("metrics header mismatch");
  }
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 9) {
      throw std::runtime_error(fmt::format("metrics row has {} fields: {}", f.size(), line));
    }
    MetricsRow r;
    r.cell_id = f[0];
    r.seed = std::stoull(f[1]);
    r.step = std::stoll(f[2]);
    r.agent = std::stoi(f[3]);
    r.ret = ToDouble(f[4]);
    r.metric_name = f[5];
    r.metric_value = ToDouble(f[6]);
    r.epsilon = ToDouble(f[7]);
    r.loss = ToDouble(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MetricsRow> ReadMetricsCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseMetricsCsv(ss.str());
}

}  // namespace ssdlab
