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

#ifndef SSDLAB_CLI_FIGURES_H_
#define SSDLAB_CLI_FIGURES_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "ssdlab/egta/egta.h"
#include "ssdlab/harness/metrics.h"

namespace ssdlab {

class SchemaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each (cell, seed) run contributes the metric of its last evaluation
// point, averaged over agents; a cell's value is the mean over its runs,
// NaN when no run has a defined metric.

// "x,y,value", one row per cell, in table order.
std::string HeatmapCsv(const std::vector<MetricsRow>& rows,
                       const std::string& x_key, const std::string& y_key);

// "series,x,value": series is the cell id without the x axis.
std::string SweepCurvesCsv(const std::vector<MetricsRow>& rows,
                           const std::string& x_key);

// "fear,greed,class", one row per payoff matrix.
std::string ScatterCsv(const std::vector<EmpiricalPayoffMatrix>& matrices);

}  // namespace ssdlab

#endif  // SSDLAB_CLI_FIGURES_H_
