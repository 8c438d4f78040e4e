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

#ifndef SSDLAB_ENGINE_OBSERVATION_H_
#define SSDLAB_ENGINE_OBSERVATION_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ssdlab/engine/world.h"

namespace ssdlab {

inline constexpr int kObsChannels = 3;
inline constexpr int kObsRows = 16;
inline constexpr int kObsCols = 21;
inline constexpr int kObsCells = kObsRows * kObsCols;
inline constexpr int kObsSize = kObsChannels * kObsCells;  // 1008
// The observer sits on the bottom row, centered; it sees 15 rows ahead and
// 10 columns to each side.
inline constexpr int kAnchorRow = kObsRows - 1;
inline constexpr int kAnchorCol = kObsCols / 2;

// Palette entries. kBackground renders as black (all channels zero) and is
// used for floor and for cells outside the map.
enum class Palette : uint8_t {
  kBackground = 0,
  kWall,
  kApple,
  kBeam,
  kSelf,
  kTeammate,
  kOpponent,
  kPrey,
};

inline constexpr int kPaletteSize = 8;

struct Rgb {
  float r, g, b;
};

inline constexpr std::array<Rgb, kPaletteSize> kPaletteColors = {{
    {0.0f, 0.0f, 0.0f},    // background
    {0.5f, 0.5f, 0.5f},    // wall: gray
    {0.0f, 1.0f, 0.0f},    // apple: green
    {1.0f, 1.0f, 0.0f},    // beam: yellow
    {0.0f, 0.0f, 1.0f},    // self: blue
    {0.5f, 0.75f, 1.0f},   // teammate: light blue
    {1.0f, 0.0f, 0.0f},    // opponent: red
    {1.0f, 1.0f, 1.0f},    // prey: white
}};

// Egocentric 3x16x21 RGB view. Stored as one palette index per cell; the
// float tensor is derived on demand in channel, row, column order.
class Observation {
 public:
  Observation() { codes_.fill(Palette::kBackground); }
  explicit Observation(int agent_id) : agent_id_(agent_id) {
    codes_.fill(Palette::kBackground);
  }

  int agent_id() const { return agent_id_; }

  Palette code(int row, int col) const { return codes_[row * kObsCols + col]; }
  void set_code(int row, int col, Palette p) { codes_[row * kObsCols + col] = p; }
  const std::array<Palette, kObsCells>& codes() const { return codes_; }

  float Pixel(int channel, int row, int col) const;

  // Writes the flattened tensor into `out`, which must hold kObsSize values.
  void WriteTensor(std::span<double> out) const;
  std::vector<double> Tensor() const;

  friend bool operator==(const Observation&, const Observation&) = default;

 private:
  int agent_id_ = 0;
  std::array<Palette, kObsCells> codes_;
};

// Renders agent `agent`'s view, rotated so the agent faces up. Throws
// EngineError(kInactiveAgent) for an inactive agent.
Observation RenderObservation(const WorldState& state, int agent);

}  // namespace ssdlab

#endif  // SSDLAB_ENGINE_OBSERVATION_H_
