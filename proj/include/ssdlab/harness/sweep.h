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

#ifndef SSDLAB_HARNESS_SWEEP_H_
#define SSDLAB_HARNESS_SWEEP_H_

#include <string>
#include <vector>

#include "ssdlab/harness/config.h"
#include "ssdlab/harness/metrics.h"
#include "ssdlab/harness/train.h"

namespace ssdlab {

struct RunFailure {
  std::string cell_id;
  uint64_t seed = 0;
  std::string message;
};

struct SweepResult {
  int runs = 0;
  int completed = 0;
  // Rows of completed runs ordered by cell, then seed.
  std::vector<MetricsRow> rows;
  std::vector<RunFailure> failures;
  // Final checkpoints of completed runs, when checkpoints are written.
  std::vector<PoolEntry> pool;
};

// Trains every (cell, seed) pair: seeds are base seed + k for k below
// seeds_per_cell, the same in every cell. Runs execute on up to
// `parallelism` threads with nothing shared between them, and the results
// are merged in enumeration order, so the outcome does not depend on
// parallelism. A run that fails is reported without stopping the others.
//
// Per-run checkpoints go to <checkpoint_dir>/cell<i>_seed<s>/; the merged
// metrics table and pool manifest are written to the base metrics_path and
// <checkpoint_dir>/manifest.csv when those are set.
SweepResult RunSweep(const SweepSpec& spec, int parallelism);

}  // namespace ssdlab

#endif  // SSDLAB_HARNESS_SWEEP_H_
