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

#ifndef SSDLAB_ENGINE_GRID_MAP_H_
#define SSDLAB_ENGINE_GRID_MAP_H_

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssdlab {

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline int ManhattanDistance(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

enum class Terrain : uint8_t { kFloor = 0, kWall = 1 };

enum class GameKind { kGathering, kWolfpack };

class MapError : public std::runtime_error {
 public:
  enum class Kind { kUnknownChar, kRaggedRows, kMissingSpawn, kEmptyMap,
                    kDuplicateSpawn };

  MapError(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Static terrain plus role-tagged spawn cells. Map text alphabet:
//   '#' wall   '.' floor   '1' '2' player spawns   'P' prey spawn
//   'A' apple site (floor beneath)
class GridMap {
 public:
  GridMap(int width, int height, std::vector<Terrain> cells,
          std::vector<Cell> player_spawns, std::vector<Cell> prey_spawns,
          std::vector<Cell> apple_sites);

  int width() const { return width_; }
  int height() const { return height_; }

  bool InBounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  Terrain At(Cell c) const { return cells_[c.y * width_ + c.x]; }
  // Out-of-bounds cells count as walls.
  bool IsWall(Cell c) const { return !InBounds(c) || At(c) == Terrain::kWall; }

  const std::vector<Cell>& player_spawns() const { return player_spawns_; }
  const std::vector<Cell>& prey_spawns() const { return prey_spawns_; }
  const std::vector<Cell>& apple_sites() const { return apple_sites_; }

  // Checks the game-specific spawn requirements: Gathering needs at least
  // one apple site, Wolfpack at least one prey spawn. Throws MapError.
  void ValidateFor(GameKind game) const;

  GridMap WithoutAppleSites() const {
    return GridMap(width_, height_, cells_, player_spawns_, prey_spawns_, {});
  }

  // Renders back to the map alphabet.
  std::string ToText() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<Terrain> cells_;
  std::vector<Cell> player_spawns_;  // index 0 is '1', index 1 is '2'
  std::vector<Cell> prey_spawns_;
  std::vector<Cell> apple_sites_;    // row-major order
};

// Parses a map document. Throws MapError.
GridMap LoadMap(std::string_view text);

// Reads and parses a map file. Throws MapError, or std::runtime_error when
// the file cannot be read.
GridMap LoadMapFile(const std::filesystem::path& path);

}  // namespace ssdlab

#endif  // SSDLAB_ENGINE_GRID_MAP_H_
