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

#include "ssdlab/harness/sweep.h"

#include <fmt/core.h>

#include <atomic>
#include <optional>
#include <thread>

namespace ssdlab {

namespace fs = std::filesystem;

namespace {

struct Job {
  const SweepCell* cell = nullptr;
  uint64_t seed = 0;
  std::optional<TrainResult> result;
  std::string error;
};

uint64_t BaseSeed(const SweepSpec& spec) {
  auto it = spec.base.find("seed");
  if (it == spec.base.end()) throw ConfigError("missing required key 'seed'");
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("seed: expected an integer, got '{}'", it->second));
  }
}

}  // namespace

SweepResult RunSweep(const SweepSpec& spec, int parallelism) {
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  const uint64_t base_seed = BaseSeed(spec);
  const std::vector<SweepCell> cells = spec.Cells();

  // The base document supplies the shared output locations.
  fs::path metrics_path, checkpoint_dir;
  if (auto it = spec.base.find("metrics_path"); it != spec.base.end()) {
    metrics_path = spec.base_dir / it->second;
  }
  if (auto it = spec.base.find("checkpoint_dir"); it != spec.base.end()) {
    checkpoint_dir = spec.base_dir / it->second;
  }

  std::vector<Job> jobs;
  for (const SweepCell& cell : cells) {
    for (int k = 0; k < spec.seeds_per_cell; ++k) {
      jobs.push_back({&cell, base_seed + static_cast<uint64_t>(k), std::nullopt, ""});
    }
  }

  auto run = [&](Job& job) {
    try {
      RawConfig raw = spec.CellConfig(*job.cell);
      raw["seed"] = std::to_string(job.seed);
      ExperimentConfig cfg = BuildExperimentConfig(raw, spec.base_dir);
      cfg.metrics_path.clear();
      cfg.checkpoint_dir.clear();
      if (!checkpoint_dir.empty()) {
        cfg.checkpoint_dir =
            checkpoint_dir / fmt::format("cell{}_seed{}", job.cell->index, job.seed);
      }
      job.result = Train(cfg, job.cell->id);
    } catch (const std::exception& e) {
      job.error = e.what();
    }
  };

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) run(jobs[i]);
  };
  const int threads = std::min<int>(parallelism, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  SweepResult out;
  out.runs = static_cast<int>(jobs.size());
  for (Job& job : jobs) {
    if (!job.result) {
      out.failures.push_back({job.cell->id, job.seed, job.error});
      continue;
    }
    ++out.completed;
    for (MetricsRow& r : job.result->rows) out.rows.push_back(std::move(r));
    for (PoolEntry& e : job.result->pool) out.pool.push_back(std::move(e));
  }
  if (!metrics_path.empty()) WriteMetricsCsv(out.rows, metrics_path);
  if (!checkpoint_dir.empty() && !out.pool.empty()) {
    WritePoolManifest(out.pool, checkpoint_dir / "manifest.csv");
  }
  return out;
}

}  // namespace ssdlab
