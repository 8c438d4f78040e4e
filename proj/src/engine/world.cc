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

#include "ssdlab/engine/world.h"

#include <fmt/core.h>

namespace ssdlab {

std::string_view ActionName(Action a) {
  switch (a) {
    case Action::kStepForward: return "StepForward";
    case Action::kStepBackward: return "StepBackward";
    case Action::kStepLeft: return "StepLeft";
    case Action::kStepRight: return "StepRight";
    case Action::kRotateLeft: return "RotateLeft";
    case Action::kRotateRight: return "RotateRight";
    case Action::kUseBeam: return "UseBeam";
    case Action::kStandStill: return "StandStill";
  }
  return "?";
}

Cell MoveDelta(Action a, Orientation o) {
  switch (a) {
    case Action::kStepForward: return Heading(o);
    case Action::kStepBackward: {
      Cell h = Heading(o);
      return {-h.x, -h.y};
    }
    case Action::kStepLeft: return Heading(RotateLeft(o));
    case Action::kStepRight: return Heading(RotateRight(o));
    default: return {0, 0};
  }
}

int WorldState::OccupantAt(Cell c) const {
  for (const EntityState& e : entities) {
    if (e.active && e.position == c) return e.id;
  }
  return -1;
}

bool WorldState::AppleAt(Cell c) const {
  const auto& sites = map->apple_sites();
  for (size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] == c) return apple_timers[k] == 0;
  }
  return false;
}

bool operator==(const WorldState& a, const WorldState& b) {
  const bool same_map =
      a.map == b.map || (a.map && b.map && *a.map == *b.map);
  return same_map && a.entities == b.entities &&
         a.apple_timers == b.apple_timers && a.beams == b.beams &&
         a.step == b.step &&
         a.players_are_teammates == b.players_are_teammates && a.rng == b.rng;
}

WorldState MakeInitialState(std::shared_ptr<const GridMap> map, uint64_t seed,
                            bool with_prey) {
  WorldState state;
  state.rng = Rng(seed);
  for (int i = 0; i < 2; ++i) {
    EntityState e;
    e.id = i;
    e.kind = EntityKind::kPlayer;
    e.position = map->player_spawns()[i];
    e.spawn = e.position;
    state.entities.push_back(e);
  }
  if (with_prey) {
    if (map->prey_spawns().empty()) {
      throw MapError(MapError::Kind::kMissingSpawn, "missing spawn: prey");
    }
    EntityState e;
    e.id = 2;
    e.kind = EntityKind::kPrey;
    e.position = map->prey_spawns().front();
    e.spawn = e.position;
    state.entities.push_back(e);
  }
  state.apple_timers.assign(map->apple_sites().size(), 0);
  state.map = std::move(map);
  return state;
}

std::vector<uint8_t> ResolveMoves(WorldState& state,
                                  std::span<const Action> joint) {
  const size_t n = state.entities.size();
  if (joint.size() != n) {
    throw EngineError(EngineError::Kind::kArityMismatch,
                      fmt::format("expected {} actions, got {}", n,
                                  joint.size()));
  }
  state.beams.clear();

  std::vector<uint8_t> inactive_at_start(n);
  std::vector<uint8_t> moving(n, 0);
  std::vector<Cell> target(n);
  for (size_t i = 0; i < n; ++i) {
    EntityState& e = state.entities[i];
    inactive_at_start[i] = !e.active;
    target[i] = e.position;
    if (!e.active) continue;
    switch (joint[i]) {
      case Action::kRotateLeft:
        e.orientation = RotateLeft(e.orientation);
        break;
      case Action::kRotateRight:
        e.orientation = RotateRight(e.orientation);
        break;
      case Action::kStepForward:
      case Action::kStepBackward:
      case Action::kStepLeft:
      case Action::kStepRight: {
        const Cell d = MoveDelta(joint[i], e.orientation);
        const Cell t{e.position.x + d.x, e.position.y + d.y};
        if (!state.map->IsWall(t)) {
          moving[i] = 1;
          target[i] = t;
        }
        break;
      }
      default:
        break;
    }
  }

  // Cancel conflicting moves until a fixed point is reached. A cancelled
  // mover stays put, which can in turn block movers heading for its cell.
  // Each round decides cancellations against a snapshot so that both sides
  // of a conflict are cancelled together.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<uint8_t> cancel(n, 0);
    for (size_t i = 0; i < n; ++i) {
      if (!moving[i]) continue;
      for (size_t j = 0; j < n && !cancel[i]; ++j) {
        if (j == i || !state.entities[j].active) continue;
        const Cell pos_j = state.entities[j].position;
        if (moving[j]) {
          cancel[i] = target[j] == target[i] ||
                      (target[i] == pos_j &&
                       target[j] == state.entities[i].position);
        } else {
          cancel[i] = pos_j == target[i];
        }
      }
    }
    for (size_t i = 0; i < n; ++i) {
      if (!cancel[i]) continue;
      moving[i] = 0;
      target[i] = state.entities[i].position;
      changed = true;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (moving[i]) state.entities[i].position = target[i];
  }
  return inactive_at_start;
}

std::vector<int> CastBeam(WorldState& state, int shooter) {
  EntityState& s = state.entities.at(shooter);
  if (!s.active) {
    throw EngineError(EngineError::Kind::kInactiveShooter,
                      fmt::format("entity {} is inactive", shooter));
  }
  BeamSegment beam{shooter, s.orientation, {}};
  const Cell h = Heading(s.orientation);
  std::vector<int> hits;
  Cell c{s.position.x + h.x, s.position.y + h.y};
  while (!state.map->IsWall(c)) {
    const int occupant = state.OccupantAt(c);
    if (occupant >= 0) {
      ++state.entities[occupant].hit_count;
      hits.push_back(occupant);
      break;
    }
    beam.cells.push_back(c);
    c = {c.x + h.x, c.y + h.y};
  }
  state.beams.push_back(std::move(beam));
  return hits;
}

void RemoveEntity(WorldState& state, int id, int frames) {
  EntityState& e = state.entities.at(id);
  e.active = false;
  e.removal_timer = frames;
  e.hit_count = 0;
}

void AdvanceTimers(WorldState& state,
                   std::span<const uint8_t> inactive_at_start,
                   std::span<const int> apple_timers_at_start) {
  for (EntityState& e : state.entities) {
    if (!inactive_at_start[e.id] || e.active) continue;
    if (--e.removal_timer > 0) continue;
    if (state.OccupantAt(e.spawn) >= 0) {
      e.removal_timer = 1;
      continue;
    }
    e.active = true;
    e.removal_timer = 0;
    e.hit_count = 0;
    e.position = e.spawn;
    e.orientation = Orientation::kNorth;
  }
  for (size_t k = 0; k < state.apple_timers.size(); ++k) {
    if (apple_timers_at_start[k] > 0) --state.apple_timers[k];
  }
  ++state.step;
}

void ApplyKinematics(WorldState& state, std::span<const Action> joint) {
  const std::vector<int> apples = state.apple_timers;
  const std::vector<uint8_t> inactive = ResolveMoves(state, joint);
  AdvanceTimers(state, inactive, apples);
}

}  // namespace ssdlab
