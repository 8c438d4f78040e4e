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

#ifndef SSDLAB_HARNESS_ENVIRONMENT_H_
#define SSDLAB_HARNESS_ENVIRONMENT_H_

#include <memory>
#include <span>

#include "ssdlab/engine/observation.h"
#include "ssdlab/games/games.h"

namespace ssdlab {

struct GameConfig {
  GameKind game = GameKind::kGathering;
  std::shared_ptr<const GridMap> map;
  GatheringParams gathering;
  WolfpackParams wolfpack;
  int episode_length = 1000;

  // "beam_use_rate" or "wolves_per_capture".
  std::string_view metric_name() const;
};

// A two-player game seen from the learners' side: rewards and egocentric
// observations for players 0 and 1. A removed player observes a blank view.
class Environment {
 public:
  explicit Environment(GameConfig cfg);

  void Reset(uint64_t seed);
  StepResult Step(std::span<const Action> player_actions);
  Observation Observe(int agent) const;

  // Replaces the scripted Wolfpack prey (e.g. to replay a recorded run).
  void set_prey_policy(PreyPolicy prey) { prey_ = std::move(prey); }

  const WorldState& state() const { return state_; }
  const GameConfig& config() const { return cfg_; }
  int episode_length() const { return cfg_.episode_length; }

 private:
  GameConfig cfg_;
  WorldState state_;
  PreyPolicy prey_ = ScriptedPreyAction;
};

}  // namespace ssdlab

#endif  // SSDLAB_HARNESS_ENVIRONMENT_H_
