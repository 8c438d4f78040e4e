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

#ifndef SSDLAB_HARNESS_METRICS_H_
#define SSDLAB_HARNESS_METRICS_H_

#include <filesystem>
#include <string>
#include <vector>

namespace ssdlab {

inline constexpr std::string_view kMetricsHeader =
    "cell_id,seed,step,agent,return,metric_name,metric_value,epsilon,loss";

// One row per agent per evaluation point. `ret` is the agent's mean
// undiscounted return over the evaluation episodes; metric_value and loss
// are NaN when undefined (no captures, no updates yet).
struct MetricsRow {
  std::string cell_id;
  uint64_t seed = 0;
  int64_t step = 0;
  int agent = 1;  // 1 or 2
  double ret = 0.0;
  std::string metric_name;
  double metric_value = 0.0;
  double epsilon = 0.0;
  double loss = 0.0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

std::string FormatMetricsRow(const MetricsRow& row);
std::string FormatMetricsCsv(const std::vector<MetricsRow>& rows);
void WriteMetricsCsv(const std::vector<MetricsRow>& rows,
                     const std::filesystem::path& path);
// Throws std::runtime_error on a wrong header or malformed row.
std::vector<MetricsRow> ParseMetricsCsv(const std::string& text);
std::vector<MetricsRow> ReadMetricsCsv(const std::filesystem::path& path);

}  // namespace ssdlab

#endif  // SSDLAB_HARNESS_METRICS_H_
