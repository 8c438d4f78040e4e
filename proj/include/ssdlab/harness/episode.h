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

#ifndef SSDLAB_HARNESS_EPISODE_H_
#define SSDLAB_HARNESS_EPISODE_H_

#include <array>
#include <functional>
#include <optional>

#include "ssdlab/games/episode_log.h"
#include "ssdlab/harness/environment.h"
#include "ssdlab/learner/agent.h"

namespace ssdlab {

enum class Mode { kTrain, kEval };

struct LossTally {
  std::array<double, 2> sum = {0.0, 0.0};
  std::array<long, 2> updates = {0, 0};

  std::optional<double> Mean(int agent) const {
    if (updates[agent] == 0) return std::nullopt;
    return sum[agent] / static_cast<double>(updates[agent]);
  }
};

struct EpisodeOptions {
  uint64_t env_seed = 0;
  // Frames to play; 0 means the environment's episode length.
  int frames = 0;
  // Exploration rate for every policy in eval mode.
  double eval_epsilon = 0.05;
  // Filled in train mode.
  LossTally* losses = nullptr;
  // Called after every frame with the number of frames played so far.
  std::function<void(int)> after_frame;
};

// Resets the environment and the policies, then plays one episode.
//
// Eval mode asks every policy for an action at eval_epsilon with `rng`.
// Train mode lets each QAgent act from its own schedule and stream and feed
// every transition to its own buffer, one per frame, the last one flagged
// terminal; other policies act greedily with `rng` and learn nothing.
EpisodeLog RunEpisode(Environment& env, std::span<Policy* const> agents,
                      Mode mode, Rng& rng, const EpisodeOptions& opts = {});

}  // namespace ssdlab

#endif  // SSDLAB_HARNESS_EPISODE_H_
