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

#ifndef SSDLAB_TESTS_SUPPORT_SCRIPTED_POLICIES_H_
#define SSDLAB_TESTS_SUPPORT_SCRIPTED_POLICIES_H_

// Deterministic reactive policies that treat left and right alike: on a map
// that is its own mirror image, the two seats play out as mirror images.

#include <optional>

#include "ssdlab/learner/agent.h"

namespace ssdlab::testing {

// Offset (columns right, rows ahead) of the other player in the view.
inline std::optional<std::pair<int, int>> OtherPlayer(const Observation& obs) {
  for (int r = 0; r < kObsRows; ++r) {
    for (int c = 0; c < kObsCols; ++c) {
      const Palette p = obs.code(r, c);
      if (p == Palette::kOpponent || p == Palette::kTeammate) {
        return std::make_pair(c - kAnchorCol, kAnchorRow - r);
      }
    }
  }
  return std::nullopt;
}

// Turns to face the other player and beams it once it is straight ahead.
class Aggressor : public Policy {
 public:
  Action Act(const Observation& obs, double, Rng&) override {
    const auto other = OtherPlayer(obs);
    if (!other) return Action::kStandStill;
    const auto [right, ahead] = *other;
    if (right == 0 && ahead > 0) return Action::kUseBeam;
    if (ahead == 0 && right > 0) return Action::kRotateRight;
    if (ahead == 0 && right < 0) return Action::kRotateLeft;
    return Action::kStandStill;
  }
};

// Turns to face the other player and walks forward, picking up apples.
class Gatherer : public Policy {
 public:
  Action Act(const Observation& obs, double, Rng&) override {
    const auto other = OtherPlayer(obs);
    if (other && other->second == 0 && other->first > 0) return Action::kRotateRight;
    if (other && other->second == 0 && other->first < 0) return Action::kRotateLeft;
    return Action::kStepForward;
  }
};

// Mirror-symmetric corridor with apples between the players.
inline constexpr char kMirrorCorridor[] =
    "###########\n"
    "#1..A.A..2#\n"
    "###########\n";

}  // namespace ssdlab::testing

#endif  // SSDLAB_TESTS_SUPPORT_SCRIPTED_POLICIES_H_
