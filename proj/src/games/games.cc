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

#include "ssdlab/games/games.h"

#include <limits>

#include <fmt/core.h>

namespace ssdlab {

void GatheringParams::Validate() const {
  if (n_apple < 1) throw ParamError(fmt::format("n_apple must be >= 1, got {}", n_apple));
  if (n_tagged < 1) throw ParamError(fmt::format("n_tagged must be >= 1, got {}", n_tagged));
}

void WolfpackParams::Validate() const {
  if (capture_radius < 0) {
    throw ParamError(fmt::format("capture_radius must be >= 0, got {}", capture_radius));
  }
  if (!(r_lone > 0.0)) throw ParamError("r_lone must be positive");
  if (!(r_team >= r_lone)) throw ParamError("r_team must be >= r_lone");
}

WorldState MakeGatheringState(std::shared_ptr<const GridMap> map,
                              uint64_t seed) {
  map->ValidateFor(GameKind::kGathering);
  WorldState state = MakeInitialState(std::move(map), seed, /*with_prey=*/false);
  state.players_are_teammates = false;
  return state;
}

WorldState MakeWolfpackState(std::shared_ptr<const GridMap> map,
                             uint64_t seed) {
  map->ValidateFor(GameKind::kWolfpack);
  // Apple markers are ignored in Wolfpack.
  if (!map->apple_sites().empty()) {
    map = std::make_shared<const GridMap>(map->WithoutAppleSites());
  }
  WorldState state = MakeInitialState(std::move(map), seed, /*with_prey=*/true);
  state.players_are_teammates = true;
  return state;
}

StepResult GatheringStep(WorldState& state, std::span<const Action> joint,
                         const GatheringParams& params) {
  const std::vector<int> apples_at_start = state.apple_timers;
  const std::vector<uint8_t> inactive = ResolveMoves(state, joint);
  StepResult result;

  for (int i = 0; i < 2; ++i) {
    if (state.entities[i].active && joint[i] == Action::kUseBeam) {
      CastBeam(state, i);
    }
  }
  const auto& sites = state.map->apple_sites();
  for (int i = 0; i < 2; ++i) {
    const EntityState& e = state.entities[i];
    if (!e.active) continue;
    for (size_t k = 0; k < sites.size(); ++k) {
      if (sites[k] == e.position && state.apple_timers[k] == 0) {
        state.apple_timers[k] = params.n_apple;
        result.rewards[i] += 1.0;
        result.events.push_back({GameEvent::Type::kAppleCollected, i, 0});
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    const EntityState& e = state.entities[i];
    if (e.active && e.hit_count >= 2) {
      RemoveEntity(state, i, params.n_tagged);
      result.events.push_back({GameEvent::Type::kTag, i, 0});
    }
  }
  AdvanceTimers(state, inactive, apples_at_start);
  return result;
}

Action ScriptedPreyAction(const WorldState& state, Rng& rng) {
  const EntityState& prey = state.entities.at(2);
  constexpr Action kCandidates[] = {Action::kStepForward, Action::kStepBackward,
                                    Action::kStepLeft, Action::kStepRight,
                                    Action::kStandStill};
  Action legal[5];
  int num_legal = 0;
  Action best = Action::kStandStill;
  int best_distance = -1;
  for (Action a : kCandidates) {
    const Cell d = MoveDelta(a, prey.orientation);
    const Cell t{prey.position.x + d.x, prey.position.y + d.y};
    if (a != Action::kStandStill &&
        (state.map->IsWall(t) || state.OccupantAt(t) >= 0)) {
      continue;
    }
    legal[num_legal++] = a;
    int nearest = std::numeric_limits<int>::max();
    for (int w = 0; w < 2; ++w) {
      const EntityState& wolf = state.entities[w];
      if (wolf.active) nearest = std::min(nearest, ManhattanDistance(wolf.position, t));
    }
    if (nearest == std::numeric_limits<int>::max()) nearest = 0;
    if (nearest > best_distance) {
      best_distance = nearest;
      best = a;
    }
  }
  if (rng.Bernoulli(0.8)) return best;
  return legal[rng.UniformInt(num_legal)];
}

StepResult WolfpackStep(WorldState& state, std::span<const Action> wolf_actions,
                        const WolfpackParams& params, const PreyPolicy& prey) {
  if (wolf_actions.size() != 2) {
    throw EngineError(EngineError::Kind::kArityMismatch,
                      fmt::format("expected 2 wolf actions, got {}",
                                  wolf_actions.size()));
  }
  StepResult result;
  const EntityState& prey_entity = state.entities.at(2);
  const Action prey_action =
      prey_entity.active ? prey(state, state.rng) : Action::kStandStill;
  result.prey_action = prey_action;
  const Action joint[3] = {wolf_actions[0], wolf_actions[1], prey_action};

  const std::vector<int> apples_at_start = state.apple_timers;
  const std::vector<uint8_t> inactive = ResolveMoves(state, joint);
  for (int i = 0; i < 2; ++i) {
    if (state.entities[i].active && joint[i] == Action::kUseBeam) {
      CastBeam(state, i);
    }
  }

  const EntityState& p = state.entities[2];
  if (p.active) {
    int toucher = -1;
    bool credited[2] = {false, false};
    for (int w = 0; w < 2; ++w) {
      const EntityState& wolf = state.entities[w];
      if (!wolf.active) continue;
      const int d = ManhattanDistance(wolf.position, p.position);
      if (d <= 1) {
        if (toucher < 0) toucher = w;
        credited[w] = true;
      }
      if (d <= params.capture_radius) credited[w] = true;
    }
    if (toucher >= 0) {
      const int count = credited[0] + credited[1];
      const double reward = count == 2 ? params.r_team : params.r_lone;
      for (int w = 0; w < 2; ++w) {
        if (credited[w]) result.rewards[w] = reward;
      }
      result.events.push_back({GameEvent::Type::kCapture, toucher, count});

      // Respawn the prey at a random free prey spawn; if every spawn is
      // taken it sits out a frame and retries at the chosen one.
      const auto& spawns = state.map->prey_spawns();
      const size_t offset = state.rng.UniformInt(spawns.size());
      EntityState& prey_mut = state.entities[2];
      prey_mut.spawn = spawns[offset];
      bool placed = false;
      for (size_t k = 0; k < spawns.size() && !placed; ++k) {
        const Cell c = spawns[(offset + k) % spawns.size()];
        const int occupant = state.OccupantAt(c);
        if (occupant < 0 || occupant == 2) {
          prey_mut.position = c;
          prey_mut.spawn = c;
          prey_mut.orientation = Orientation::kNorth;
          placed = true;
        }
      }
      if (!placed) RemoveEntity(state, 2, 1);
    }
  }
  AdvanceTimers(state, inactive, apples_at_start);
  return result;
}

}  // namespace ssdlab
