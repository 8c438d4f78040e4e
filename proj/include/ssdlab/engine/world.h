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

#ifndef SSDLAB_ENGINE_WORLD_H_
#define SSDLAB_ENGINE_WORLD_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ssdlab/engine/grid_map.h"
#include "ssdlab/rng.h"

namespace ssdlab {

// Agent-centered action set. The integer encoding is stable.
enum class Action : uint8_t {
  kStepForward = 0,
  kStepBackward = 1,
  kStepLeft = 2,
  kStepRight = 3,
  kRotateLeft = 4,
  kRotateRight = 5,
  kUseBeam = 6,
  kStandStill = 7,
};

inline constexpr int kNumActions = 8;

std::string_view ActionName(Action a);

enum class Orientation : uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

inline Orientation RotateLeft(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 3) % 4);
}
inline Orientation RotateRight(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 1) % 4);
}

// Unit step for a heading; y grows southwards.
inline Cell Heading(Orientation o) {
  constexpr std::array<Cell, 4> kDelta = {{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};
  return kDelta[static_cast<int>(o)];
}

// World-frame displacement of a move action for an entity facing `o`.
// Non-move actions return {0, 0}.
Cell MoveDelta(Action a, Orientation o);

enum class EntityKind : uint8_t { kPlayer, kPrey };

struct EntityState {
  int id = 0;
  EntityKind kind = EntityKind::kPlayer;
  Cell position;
  Orientation orientation = Orientation::kNorth;
  bool active = true;
  int removal_timer = 0;
  int hit_count = 0;
  Cell spawn;  // respawn target

  friend bool operator==(const EntityState&, const EntityState&) = default;
};

class EngineError : public std::runtime_error {
 public:
  enum class Kind { kArityMismatch, kInactiveShooter, kInactiveAgent };

  EngineError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct BeamSegment {
  int shooter = 0;
  Orientation orientation = Orientation::kNorth;
  std::vector<Cell> cells;

  friend bool operator==(const BeamSegment&, const BeamSegment&) = default;
};

struct WorldState {
  std::shared_ptr<const GridMap> map;
  std::vector<EntityState> entities;
  // Frames until each apple site respawns; 0 means the apple is present.
  std::vector<int> apple_timers;
  // Beams fired during the most recent frame, kept for rendering.
  std::vector<BeamSegment> beams;
  int64_t step = 0;
  // Whether the players render as teammates (light blue) rather than
  // opponents (red) in each other's view.
  bool players_are_teammates = false;
  Rng rng;

  // Entity occupying `c`, considering active entities only; -1 if none.
  int OccupantAt(Cell c) const;
  bool AppleAt(Cell c) const;

  friend bool operator==(const WorldState& a, const WorldState& b);
};

// Creates the initial state: players at their spawns, facing north, all apples
// present. With `with_prey` an extra prey entity is placed on the first prey
// spawn.
WorldState MakeInitialState(std::shared_ptr<const GridMap> map, uint64_t seed,
                            bool with_prey);

// Phase 1 of a frame: clears last frame's beams and resolves rotations and
// moves simultaneously. `joint` holds one action per entity; inactive
// entities' actions are ignored. Movement into walls, off the map, into a
// cell held by an entity that ends the phase there, two movers targeting the
// same cell, and two movers swapping cells are all cancelled.
// Returns, per entity, whether it was inactive at the start of the frame.
std::vector<uint8_t> ResolveMoves(WorldState& state,
                                  std::span<const Action> joint);

// Fires a one-cell-wide instantaneous beam from `shooter` along its heading.
// The beam stops at the first wall or map edge; the nearest active entity on
// the ray is hit (hit_count incremented) and blocks the rest of it. Returns
// the hit entity ids (zero or one).
std::vector<int> CastBeam(WorldState& state, int shooter);

// Phase 4 of a frame: decrements the timers of entities and apple sites that
// were already counting down when the frame started, respawns entities
// whose timer reaches zero (delayed a frame while the spawn cell is taken),
// and increments the step counter.
void AdvanceTimers(WorldState& state,
                   std::span<const uint8_t> inactive_at_start,
                   std::span<const int> apple_timers_at_start);

// Removes an entity for `frames` frames, clearing its hit count.
void RemoveEntity(WorldState& state, int id, int frames);

// Movement plus timer bookkeeping for a frame without game rules.
void ApplyKinematics(WorldState& state, std::span<const Action> joint);

}  // namespace ssdlab

#endif  // SSDLAB_ENGINE_WORLD_H_
