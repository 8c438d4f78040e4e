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

#ifndef SSDLAB_HARNESS_TRAIN_H_
#define SSDLAB_HARNESS_TRAIN_H_

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "ssdlab/harness/config.h"
#include "ssdlab/harness/metrics.h"
#include "ssdlab/learner/q_network.h"

namespace ssdlab {

struct PoolEntry {
  std::filesystem::path checkpoint;
  double metric = 0.0;
  std::string label;  // "C", "D" or empty when not yet classified
};

struct TrainResult {
  std::vector<MetricsRow> rows;
  std::array<QNetwork, 2> nets = {QNetwork({1, kNumActions}),
                                  QNetwork({1, kNumActions})};
  int episodes = 0;
  int64_t frames = 0;
  std::vector<std::filesystem::path> checkpoints;
  // Final checkpoints with each agent's final metric, when checkpoints are
  // written.
  std::vector<PoolEntry> pool;
};

// Trains two independent learners for cfg.total_steps frames in episodes of
// episode_length (the last one truncated if needed). After every
// eval_interval frames and at the end, plays eval_episodes evaluation
// episodes and records one metrics row per agent. Writes the metrics file,
// the checkpoints and a pool manifest to the configured paths.
//
// All randomness is derived from cfg.seed: weights ("init", agent), agent
// streams ("agent", agent), training episodes ("env", episode) and each
// evaluation point ("eval", step).
TrainResult Train(const ExperimentConfig& cfg, const std::string& cell_id = "");

// Evaluation protocol shared by training and analysis: plays `episodes`
// eval-mode episodes with the given policies and returns one row per agent
// (step, epsilon and loss left for the caller).
std::array<MetricsRow, 2> Evaluate(const GameConfig& game,
                                   std::span<Policy* const> policies,
                                   int episodes, double eval_epsilon,
                                   uint64_t seed);

// Pool manifest: "checkpoint,metric,label" header and one row per entry.
void WritePoolManifest(const std::vector<PoolEntry>& pool,
                       const std::filesystem::path& path);
std::vector<PoolEntry> ReadPoolManifest(const std::filesystem::path& path);

}  // namespace ssdlab

#endif  // SSDLAB_HARNESS_TRAIN_H_
