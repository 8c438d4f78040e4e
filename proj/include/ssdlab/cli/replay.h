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

#ifndef SSDLAB_CLI_REPLAY_H_
#define SSDLAB_CLI_REPLAY_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "ssdlab/games/episode_log.h"
#include "ssdlab/harness/environment.h"

namespace ssdlab {

class IncompatibleLog : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One text row per map row: '#' wall, '.' floor, 'a' apple, '1' and '2'
// players, 'p' prey, '|' and '-' beam cells. Removed entities are omitted.
std::string RenderAscii(const WorldState& state);

// Action log CSV: "frame,agent1,agent2" (plus ",prey" for Wolfpack) with
// action names, one row per frame.
std::string FormatActionLog(const EpisodeLog& log, GameKind game);
std::vector<std::vector<Action>> ParseActionLog(const std::string& text);

// Re-plays logged actions from the start state for `seed`; emits a
// "frame N" header and the grid after every frame.
std::string ReplayActions(const GameConfig& game,
                          const std::vector<std::vector<Action>>& actions,
                          uint64_t seed);

}  // namespace ssdlab

#endif  // SSDLAB_CLI_REPLAY_H_
