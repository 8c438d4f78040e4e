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

#include "ssdlab/engine/observation.h"

#include <fmt/core.h>

namespace ssdlab {

float Observation::Pixel(int channel, int row, int col) const {
  const Rgb& rgb = kPaletteColors[static_cast<int>(code(row, col))];
  return channel == 0 ? rgb.r : channel == 1 ? rgb.g : rgb.b;
}

void Observation::WriteTensor(std::span<double> out) const {
  for (int i = 0; i < kObsCells; ++i) {
    const Rgb& rgb = kPaletteColors[static_cast<int>(codes_[i])];
    out[i] = rgb.r;
    out[kObsCells + i] = rgb.g;
    out[2 * kObsCells + i] = rgb.b;
  }
}

std::vector<double> Observation::Tensor() const {
  std::vector<double> out(kObsSize);
  WriteTensor(out);
  return out;
}

namespace {

struct ViewFrame {
  Cell origin;
  Cell forward;
  Cell right;

  Cell ToWorld(int row, int col) const {
    const int ahead = kAnchorRow - row;
    const int lateral = col - kAnchorCol;
    return {origin.x + ahead * forward.x + lateral * right.x,
            origin.y + ahead * forward.y + lateral * right.y};
  }

  // Returns false when the world cell falls outside the window.
  bool ToView(Cell c, int* row, int* col) const {
    const int dx = c.x - origin.x;
    const int dy = c.y - origin.y;
    const int ahead = dx * forward.x + dy * forward.y;
    const int lateral = dx * right.x + dy * right.y;
    *row = kAnchorRow - ahead;
    *col = kAnchorCol + lateral;
    return *row >= 0 && *row < kObsRows && *col >= 0 && *col < kObsCols;
  }
};

}  // namespace

Observation RenderObservation(const WorldState& state, int agent) {
  const EntityState& self = state.entities.at(agent);
  if (!self.active) {
    throw EngineError(EngineError::Kind::kInactiveAgent,
                      fmt::format("agent {} is inactive", agent));
  }
  const GridMap& map = *state.map;
  const ViewFrame frame{self.position, Heading(self.orientation),
                        Heading(RotateRight(self.orientation))};
  Observation obs(agent);

  for (int row = 0; row < kObsRows; ++row) {
    for (int col = 0; col < kObsCols; ++col) {
      const Cell c = frame.ToWorld(row, col);
      if (map.InBounds(c) && map.At(c) == Terrain::kWall) {
        obs.set_code(row, col, Palette::kWall);
      }
    }
  }
  int row = 0;
  int col = 0;
  const auto& sites = map.apple_sites();
  for (size_t k = 0; k < sites.size(); ++k) {
    if (state.apple_timers[k] == 0 && frame.ToView(sites[k], &row, &col)) {
      obs.set_code(row, col, Palette::kApple);
    }
  }
  for (const BeamSegment& beam : state.beams) {
    for (const Cell& c : beam.cells) {
      if (frame.ToView(c, &row, &col)) obs.set_code(row, col, Palette::kBeam);
    }
  }
  for (const EntityState& e : state.entities) {
    if (!e.active || !frame.ToView(e.position, &row, &col)) continue;
    Palette p = Palette::kPrey;
    if (e.id == agent) {
      p = Palette::kSelf;
    } else if (e.kind == EntityKind::kPlayer) {
      p = state.players_are_teammates ? Palette::kTeammate : Palette::kOpponent;
    }
    obs.set_code(row, col, p);
  }
  return obs;
}

}  // namespace ssdlab
