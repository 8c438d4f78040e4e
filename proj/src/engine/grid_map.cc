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

#include "ssdlab/engine/grid_map.h"

#include <fstream>
#include <sstream>

#include <fmt/core.h>

namespace ssdlab {

GridMap::GridMap(int width, int height, std::vector<Terrain> cells,
                 std::vector<Cell> player_spawns, std::vector<Cell> prey_spawns,
                 std::vector<Cell> apple_sites)
    : width_(width),
      height_(height),
      cells_(std::move(cells)),
      player_spawns_(std::move(player_spawns)),
      prey_spawns_(std::move(prey_spawns)),
      apple_sites_(std::move(apple_sites)) {
  if (width_ <= 0 || height_ <= 0) {
    throw MapError(MapError::Kind::kEmptyMap, "map has no cells");
  }
  if (static_cast<int>(cells_.size()) != width_ * height_) {
    throw MapError(MapError::Kind::kRaggedRows, "cell count != width*height");
  }
  auto check = [this](const std::vector<Cell>& spawns, const char* role) {
    for (const Cell& c : spawns) {
      if (!InBounds(c) || At(c) != Terrain::kFloor) {
        throw MapError(MapError::Kind::kMissingSpawn,
                       fmt::format("{} spawn at ({},{}) is not on floor", role,
                                   c.x, c.y));
      }
    }
  };
  check(player_spawns_, "player");
  check(prey_spawns_, "prey");
  check(apple_sites_, "apple");
  if (player_spawns_.size() != 2) {
    throw MapError(MapError::Kind::kMissingSpawn,
                   "map must declare exactly two player spawns");
  }
}

void GridMap::ValidateFor(GameKind game) const {
  if (game == GameKind::kGathering && apple_sites_.empty()) {
    throw MapError(MapError::Kind::kMissingSpawn,
                   "missing spawn: apple (Gathering needs an 'A' site)");
  }
  if (game == GameKind::kWolfpack && prey_spawns_.empty()) {
    throw MapError(MapError::Kind::kMissingSpawn,
                   "missing spawn: prey (Wolfpack needs a 'P' spawn)");
  }
}

std::string GridMap::ToText() const {
  std::string out;
  out.reserve((width_ + 1) * height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out.push_back(At({x, y}) == Terrain::kWall ? '#' : '.');
    }
    out.push_back('\n');
  }
  auto put = [&](Cell c, char ch) { out[c.y * (width_ + 1) + c.x] = ch; };
  for (const Cell& c : apple_sites_) put(c, 'A');
  for (const Cell& c : prey_spawns_) put(c, 'P');
  put(player_spawns_[0], '1');
  put(player_spawns_[1], '2');
  return out;
}

GridMap LoadMap(std::string_view text) {
  std::vector<std::string_view> rows;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    rows.push_back(row);
    start = end + 1;
  }
  // A single trailing newline is optional.
  if (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty() || rows.front().empty()) {
    throw MapError(MapError::Kind::kEmptyMap, "map document is empty");
  }

  std::vector<Terrain> cells;
  Cell player[2] = {{-1, -1}, {-1, -1}};
  std::vector<Cell> prey;
  std::vector<Cell> apples;
  for (int y = 0; y < static_cast<int>(rows.size()); ++y) {
    for (int x = 0; x < static_cast<int>(rows[y].size()); ++x) {
      const char ch = rows[y][x];
      Terrain t = Terrain::kFloor;
      switch (ch) {
        case '#':
          t = Terrain::kWall;
          break;
        case '.':
          break;
        case '1':
        case '2': {
          Cell& slot = player[ch - '1'];
          if (slot.x >= 0) {
            throw MapError(MapError::Kind::kDuplicateSpawn,
                           fmt::format("duplicate spawn '{}' at ({},{})", ch,
                                       x, y));
          }
          slot = {x, y};
          break;
        }
        case 'P':
          prey.push_back({x, y});
          break;
        case 'A':
          apples.push_back({x, y});
          break;
        default:
          throw MapError(MapError::Kind::kUnknownChar,
                         fmt::format("unknown map character at ({},{})", x, y));
      }
      cells.push_back(t);
    }
  }
  const size_t width = rows.front().size();
  for (size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) {
      throw MapError(MapError::Kind::kRaggedRows,
                     fmt::format("row {} has length {}, expected {}", y,
                                 rows[y].size(), width));
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (player[i].x < 0) {
      throw MapError(MapError::Kind::kMissingSpawn,
                     fmt::format("missing spawn: player{}", i + 1));
    }
  }
  return GridMap(static_cast<int>(width), static_cast<int>(rows.size()),
                 std::move(cells), {player[0], player[1]}, std::move(prey),
                 std::move(apples));
}

GridMap LoadMapFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(
        fmt::format("cannot read map file '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadMap(buffer.str());
}

}  // namespace ssdlab
