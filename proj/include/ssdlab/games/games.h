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

#ifndef SSDLAB_GAMES_GAMES_H_
#define SSDLAB_GAMES_GAMES_H_

#include <functional>
#include <span>
#include <stdexcept>

#include "ssdlab/engine/world.h"
#include "ssdlab/games/episode_log.h"

namespace ssdlab {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GatheringParams {
  int n_apple = 10;   // frames before a collected apple respawns
  int n_tagged = 5;   // frames a tagged player stays out

  void Validate() const;
};

struct WolfpackParams {
  int capture_radius = 3;  // L1 cells
  double r_lone = 1.0;
  double r_team = 2.0;

  void Validate() const;
};

// Gathering world: two players, apples present, players see each other as
// opponents.
WorldState MakeGatheringState(std::shared_ptr<const GridMap> map,
                              uint64_t seed);

// Wolfpack world: two wolves (entities 0 and 1) and a prey (entity 2);
// wolves see each other as teammates.
WorldState MakeWolfpackState(std::shared_ptr<const GridMap> map,
                             uint64_t seed);

// One Gathering frame. Moves resolve, beams fire from the post-move poses,
// players standing on a present apple collect it (reward 1, site timer set to
// n_apple), players hit twice since their last spawn are removed for
// n_tagged frames, then timers advance. Tagging pays nothing.
StepResult GatheringStep(WorldState& state, std::span<const Action> joint,
                         const GatheringParams& params);

using PreyPolicy = std::function<Action(const WorldState&, Rng&)>;

// Scripted evader. With probability 0.8 it takes the legal move (a step or
// StandStill) whose destination is farthest in L1 from the nearest wolf,
// preferring lower action indices on ties; otherwise a uniformly random
// legal move.
Action ScriptedPreyAction(const WorldState& state, Rng& rng);

// One Wolfpack frame. The prey action comes from `prey` (the scripted evader
// by default) drawn from the world's generator before moves resolve. A
// capture happens when a wolf ends the move phase at L1 distance <= 1 from
// the prey. Wolves that touch the prey or lie within capture_radius of it
// are credited: one wolf earns r_lone, two earn r_team each. The prey then
// respawns at a random free prey spawn.
StepResult WolfpackStep(WorldState& state, std::span<const Action> wolf_actions,
                        const WolfpackParams& params,
                        const PreyPolicy& prey = ScriptedPreyAction);

}  // namespace ssdlab

#endif  // SSDLAB_GAMES_GAMES_H_
