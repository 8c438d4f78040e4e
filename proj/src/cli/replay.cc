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

#include "ssdlab/cli/replay.h"

#include <fmt/core.h>

#include <sstream>

namespace ssdlab {

std::string RenderAscii(const WorldState& state) {
  const GridMap& map = *state.map;
  std::vector<std::string> rows(map.height(), std::string(map.width(), '.'));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map.At({x, y}) == Terrain::kWall) rows[y][x] = '#';
    }
  }
  for (size_t k = 0; k < map.apple_sites().size(); ++k) {
    if (state.apple_timers[k] == 0) {
      rows[map.apple_sites()[k].y][map.apple_sites()[k].x] = 'a';
    }
  }
  for (const BeamSegment& b : state.beams) {
    const bool vertical =
        b.orientation == Orientation::kNorth || b.orientation == Orientation::kSouth;
    for (const Cell& c : b.cells) rows[c.y][c.x] = vertical ? '|' : '-';
  }
  for (const EntityState& e : state.entities) {
    if (!e.active) continue;
    rows[e.position.y][e.position.x] =
        e.kind == EntityKind::kPrey ? 'p' : static_cast<char>('1' + e.id);
  }
  std::string out;
  for (const std::string& r : rows) out += r + "\n";
  return out;
}

std::string FormatActionLog(const EpisodeLog& log, GameKind game) {
  const bool prey = game == GameKind::kWolfpack;
  std::string out = prey ? "frame,agent1,agent2,prey\n" : "frame,agent1,agent2\n";
  for (size_t t = 0; t < log.frames.size(); ++t) {
    out += fmt::format("{}", t + 1);
    for (Action a : log.frames[t].actions) out += fmt::format(",{}", ActionName(a));
    out += "\n";
  }
  return out;
}

std::vector<std::vector<Action>> ParseActionLog(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      (line != "frame,agent1,agent2" && line != "frame,agent1,agent2,prey")) {
    throw IncompatibleLog("action log header mismatch");
  }
  const size_t width = line.ends_with(",prey") ? 3 : 2;
  std::vector<std::vector<Action>> frames;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string item;
    std::getline(fields, item, ',');  // frame number
    std::vector<Action> actions;
    while (std::getline(fields, item, ',')) {
      bool found = false;
      for (int a = 0; a < kNumActions; ++a) {
        if (ActionName(static_cast<Action>(a)) == item) {
          actions.push_back(static_cast<Action>(a));
          found = true;
        }
      }
      if (!found) throw IncompatibleLog(fmt::format("unknown action '{}'", item));
    }
    if (actions.size() != width) {
      throw IncompatibleLog(fmt::format("frame {}: expected {} actions", frames.size() + 1, width));
    }
    frames.push_back(std::move(actions));
  }
  return frames;
}

std::string ReplayActions(const GameConfig& game,
                          const std::vector<std::vector<Action>>& actions,
                          uint64_t seed) {
  const size_t width = game.game == GameKind::kWolfpack ? 3 : 2;
  for (const auto& frame : actions) {
    if (frame.size() != width) {
      throw IncompatibleLog(fmt::format(
          "log has {} actions per frame, the game needs {}", frame.size(), width));
    }
  }
  Environment env(game);
  env.Reset(seed);
  size_t t = 0;
  env.set_prey_policy([&](const WorldState&, Rng&) { return actions[t][2]; });
  std::string out;
  for (; t < actions.size(); ++t) {
    env.Step(std::span<const Action>(actions[t].data(), 2));
    out += fmt::format("frame {}\n", t + 1);
    out += RenderAscii(env.state());
  }
  return out;
}

}  // namespace ssdlab
