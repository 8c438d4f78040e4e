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

#include "ssdlab/harness/environment.h"

namespace ssdlab {

std::string_view GameConfig::metric_name() const {
  return game == GameKind::kGathering ? "beam_use_rate" : "wolves_per_capture";
}

Environment::Environment(GameConfig cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.map) throw std::invalid_argument("environment needs a map");
  if (cfg_.episode_length < 1) {
    throw ParamError("episode_length must be >= 1");
  }
  cfg_.map->ValidateFor(cfg_.game);
  cfg_.gathering.Validate();
  cfg_.wolfpack.Validate();
  Reset(0);
}

void Environment::Reset(uint64_t seed) {
  state_ = cfg_.game == GameKind::kGathering
               ? MakeGatheringState(cfg_.map, seed)
               : MakeWolfpackState(cfg_.map, seed);
}

StepResult Environment::Step(std::span<const Action> player_actions) {
  if (cfg_.game == GameKind::kGathering) {
    return GatheringStep(state_, player_actions, cfg_.gathering);
  }
  return WolfpackStep(state_, player_actions, cfg_.wolfpack, prey_);
}

Observation Environment::Observe(int agent) const {
  if (!state_.entities.at(agent).active) return Observation(agent);
  return RenderObservation(state_, agent);
}

}  // namespace ssdlab
