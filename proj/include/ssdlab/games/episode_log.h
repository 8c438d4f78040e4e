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

#ifndef SSDLAB_GAMES_EPISODE_LOG_H_
#define SSDLAB_GAMES_EPISODE_LOG_H_

#include <array>
#include <optional>
#include <vector>

#include "ssdlab/engine/world.h"

namespace ssdlab {

struct GameEvent {
  enum class Type { kAppleCollected, kTag, kCapture };

  Type type = Type::kAppleCollected;
  // Collector, tagged player, or touching wolf.
  int agent = 0;
  // Capture only: wolves credited with the capture (1 or 2).
  int wolf_count = 0;

  friend bool operator==(const GameEvent&, const GameEvent&) = default;
};

// Rewards and events produced by one frame of a game.
struct StepResult {
  std::array<double, 2> rewards = {0.0, 0.0};
  std::vector<GameEvent> events;
  // Wolfpack only: the action the prey took this frame.
  Action prey_action = Action::kStandStill;
};

struct FrameRecord {
  // One action per entity, prey last when present.
  std::vector<Action> actions;
  std::array<double, 2> rewards = {0.0, 0.0};
  // Whether each player was in the game when the frame started.
  std::array<bool, 2> active = {true, true};
  std::vector<GameEvent> events;

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

struct EpisodeLog {
  std::vector<FrameRecord> frames;
  std::array<double, 2> undiscounted_return = {0.0, 0.0};
  std::array<double, 2> discounted_return = {0.0, 0.0};

  // Appends a frame and folds its rewards into both returns, discounting
  // player i's reward by gamma[i]^t.
  void Append(FrameRecord frame, std::array<double, 2> gamma);

  friend bool operator==(const EpisodeLog&, const EpisodeLog&) = default;
};

// Fraction of frames with both players in the game during which `agent`
// chose UseBeam. 0 when the players were never both in the game.
double BeamUseRate(const EpisodeLog& log, int agent);

// Same ratio pooled over several episodes.
double BeamUseRate(const std::vector<EpisodeLog>& logs, int agent);

struct WolvesPerCapture {
  double mean = 0.0;     // in [1, 2]
  double plotted = 0.0;  // 2 - mean, the lone-wolf rate
  int captures = 0;
};

// Mean wolf count over capture events; std::nullopt when there were none.
std::optional<WolvesPerCapture> MeanWolvesPerCapture(const EpisodeLog& log);
std::optional<WolvesPerCapture> MeanWolvesPerCapture(
    const std::vector<EpisodeLog>& logs);

}  // namespace ssdlab

#endif  // SSDLAB_GAMES_EPISODE_LOG_H_
