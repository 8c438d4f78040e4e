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

#include <gtest/gtest.h>

#include <set>

#include "ssdlab/games/episode_log.h"
#include "ssdlab/games/games.h"

namespace ssdlab {
namespace {

std::shared_ptr<const GridMap> Map(const std::string& text) {
  return std::make_shared<const GridMap>(LoadMap(text));
}

constexpr Action kIdle[] = {Action::kStandStill, Action::kStandStill};

TEST(GatheringTest, SteppingOntoAppleRewardsCollector) {
  WorldState s = MakeGatheringState(Map("######\n#1A..#\n#...2#\n######"), 0);
  s.entities[0].orientation = Orientation::kEast;
  const GatheringParams params{7, 3};
  const Action joint[] = {Action::kStepForward, Action::kStandStill};
  const StepResult r = GatheringStep(s, joint, params);
  EXPECT_EQ(r.rewards, (std::array<double, 2>{1.0, 0.0}));
  EXPECT_EQ(s.apple_timers[0], 7);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].type, GameEvent::Type::kAppleCollected);
}

TEST(GatheringTest, IdleFrameChangesOnlyStep) {
  WorldState s = MakeGatheringState(Map("#######\n#1...A#\n#....2#\n#######"), 0);
  WorldState before = s;
  const StepResult r = GatheringStep(s, kIdle, GatheringParams{});
  EXPECT_EQ(r.rewards, (std::array<double, 2>{0.0, 0.0}));
  EXPECT_TRUE(r.events.empty());
  before.step = 1;
  EXPECT_EQ(s, before);
}

TEST(GatheringTest, SecondHitTagsWithoutReward) {
  WorldState s = MakeGatheringState(Map("#######\n#1..2A#\n#######"), 0);
  s.entities[0].orientation = Orientation::kEast;
  s.entities[1].hit_count = 1;
  const GatheringParams params{5, 4};
  const Action joint[] = {Action::kUseBeam, Action::kStandStill};
  const StepResult r = GatheringStep(s, joint, params);
  EXPECT_EQ(r.rewards, (std::array<double, 2>{0.0, 0.0}));
  EXPECT_FALSE(s.entities[1].active);
  EXPECT_EQ(s.entities[1].removal_timer, 4);
  EXPECT_EQ(s.entities[1].hit_count, 0);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].type, GameEvent::Type::kTag);
  EXPECT_EQ(r.events[0].agent, 1);
  // Out for exactly n_tagged frames.
  for (int k = 0; k < 4; ++k) {
    EXPECT_FALSE(s.entities[1].active);
    GatheringStep(s, kIdle, params);
  }
  EXPECT_TRUE(s.entities[1].active);
}

TEST(GatheringTest, FirstHitOnlyCounts) {
  WorldState s = MakeGatheringState(Map("#######\n#1..2A#\n#######"), 0);
  s.entities[0].orientation = Orientation::kEast;
  const Action joint[] = {Action::kUseBeam, Action::kStandStill};
  GatheringStep(s, joint, GatheringParams{});
  EXPECT_TRUE(s.entities[1].active);
  EXPECT_EQ(s.entities[1].hit_count, 1);
  ASSERT_EQ(s.beams.size(), 1u);
}

TEST(GatheringTest, BeamFiresFromPostMovePose) {
  WorldState s = MakeGatheringState(Map("#######\n#1...A#\n#...2.#\n#######"), 0);
  s.entities[0].orientation = Orientation::kSouth;
  const Action step[] = {Action::kStepForward, Action::kStandStill};
  GatheringStep(s, step, GatheringParams{});
  EXPECT_EQ(s.entities[0].position, (Cell{1, 2}));
  s.entities[0].orientation = Orientation::kEast;
  const Action fire[] = {Action::kUseBeam, Action::kStandStill};
  GatheringStep(s, fire, GatheringParams{});
  EXPECT_EQ(s.entities[1].hit_count, 1);
}

TEST(GatheringPropertyTest, RewardsEqualApplesAndApplesReturnOnTime) {
  Rng rng(17);
  const auto map = std::make_shared<const GridMap>(LoadMapFile(SSDLAB_MAPS_DIR "/gathering.txt"));
  for (int trial = 0; trial < 20; ++trial) {
    const GatheringParams params{1 + static_cast<int>(rng.UniformInt(20)),
                                 1 + static_cast<int>(rng.UniformInt(20))};
    WorldState s = MakeGatheringState(map, trial);
    // Put the players next to the apple cluster so collections happen.
    s.entities[0].position = {14, 5};
    s.entities[1].position = {18, 5};
    std::vector<int64_t> collected_at(map->apple_sites().size(), -1);
    for (int t = 0; t < 400; ++t) {
      Action joint[2];
      for (Action& a : joint) a = static_cast<Action>(rng.UniformInt(kNumActions));
      const std::vector<int> before = s.apple_timers;
      const int64_t frame = s.step;
      const StepResult r = GatheringStep(s, joint, params);
      int apples = 0;
      for (const GameEvent& e : r.events) apples += e.type == GameEvent::Type::kAppleCollected;
      EXPECT_DOUBLE_EQ(r.rewards[0] + r.rewards[1], apples);
      for (size_t k = 0; k < s.apple_timers.size(); ++k) {
        EXPECT_GE(s.apple_timers[k], 0);
        EXPECT_LE(s.apple_timers[k], params.n_apple);
        if (before[k] == 0 && s.apple_timers[k] > 0) {
          if (collected_at[k] >= 0) {
            EXPECT_GE(frame - collected_at[k], params.n_apple + 1);
          }
          collected_at[k] = frame;
        }
        if (collected_at[k] >= 0 && before[k] > 0 && s.apple_timers[k] == 0) {
          EXPECT_EQ(frame - collected_at[k], params.n_apple);
        }
      }
    }
  }
}

class WolfpackTest : public ::testing::Test {
 protected:
  // Corridor row: wolves '1' '2', prey 'P'. Prey is kept still so the
  // geometry is exact.
  static WorldState World(const std::string& row) {
    std::string text(row.size(), '#');
    text += "\n" + row + "\n" + std::string(row.size(), '#');
    return MakeWolfpackState(Map(text), 0);
  }
  static Action StillPrey(const WorldState&, Rng&) { return Action::kStandStill; }
};

TEST_F(WolfpackTest, LoneCapture) {
  WorldState s = World("#1.P.......2#");
  s.entities[0].orientation = Orientation::kEast;
  const Action joint[] = {Action::kStepForward, Action::kStandStill};
  const WolfpackParams params{2, 1.0, 5.0};
  const StepResult r = WolfpackStep(s, joint, params, StillPrey);
  EXPECT_EQ(r.rewards, (std::array<double, 2>{1.0, 0.0}));
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].type, GameEvent::Type::kCapture);
  EXPECT_EQ(r.events[0].wolf_count, 1);
}

TEST_F(WolfpackTest, TeamCaptureWhenPartnerInRadius) {
  WorldState s = World("#1.P..2.....#");
  s.entities[0].orientation = Orientation::kEast;
  const Action joint[] = {Action::kStepForward, Action::kStandStill};
  const WolfpackParams params{3, 1.0, 5.0};
  const StepResult r = WolfpackStep(s, joint, params, StillPrey);
  EXPECT_EQ(r.rewards, (std::array<double, 2>{5.0, 5.0}));
  EXPECT_EQ(r.events[0].wolf_count, 2);
}

TEST_F(WolfpackTest, NoTouchNoReward) {
  WorldState s = World("#1..P...2...#");
  const StepResult r = WolfpackStep(s, kIdle, WolfpackParams{5, 1.0, 2.0}, StillPrey);
  EXPECT_EQ(r.rewards, (std::array<double, 2>{0.0, 0.0}));
  EXPECT_TRUE(r.events.empty());
}

TEST_F(WolfpackTest, PreyRespawnsAtPreySpawnAfterCapture) {
  WorldState s = World("#1.P.....P.2#");
  s.entities[0].orientation = Orientation::kEast;
  const Action joint[] = {Action::kStepForward, Action::kStandStill};
  WolfpackStep(s, joint, WolfpackParams{}, StillPrey);
  const Cell p = s.entities[2].position;
  EXPECT_TRUE(s.entities[2].active);
  EXPECT_TRUE(p == (Cell{3, 1}) || p == (Cell{9, 1}));
}

TEST_F(WolfpackTest, PreyFleesFromWolfToTheNorth) {
  // Open 5x5 interior, wolf directly north of the prey.
  WorldState s = MakeWolfpackState(
      Map("#######\n#.....#\n#..1..#\n#..P..#\n#.....#\n#....2#\n#######"), 0);
  Rng rng(1);
  int south = 0;
  for (int k = 0; k < 200; ++k) {
    const Action a = ScriptedPreyAction(s, rng);
    EXPECT_NE(a, Action::kStepForward);  // north, toward the wolf
    south += a == Action::kStepBackward;
  }
  EXPECT_GT(south, 150);  // greedy branch taken ~80% of the time
}

TEST_F(WolfpackTest, BoxedInPreyStandsStill) {
  WorldState s = MakeWolfpackState(Map("#####\n#1#2#\n##P##\n#####"), 0);
  Rng rng(4);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(ScriptedPreyAction(s, rng), Action::kStandStill);
}

TEST_F(WolfpackTest, PreyPolicyDeterministicForSeed) {
  const WorldState s = MakeWolfpackState(
      std::make_shared<const GridMap>(LoadMapFile(SSDLAB_MAPS_DIR "/wolfpack.txt")), 0);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    EXPECT_EQ(ScriptedPreyAction(s, a), ScriptedPreyAction(s, b));
  }
}

TEST(WolfpackPropertyTest, PayoutIsOneOfFourVectors) {
  const auto map = std::make_shared<const GridMap>(LoadMapFile(SSDLAB_MAPS_DIR "/wolfpack.txt"));
  Rng rng(8);
  int captures = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const WolfpackParams params{static_cast<int>(rng.UniformInt(6)), 1.0, 3.0};
    WorldState s = MakeWolfpackState(map, trial);
    for (int t = 0; t < 2000; ++t) {
      Action joint[2];
      for (Action& a : joint) a = static_cast<Action>(rng.UniformInt(kNumActions));
      const StepResult r = WolfpackStep(s, joint, params);
      const std::set<std::array<double, 2>> allowed = {
          {0, 0}, {params.r_lone, 0}, {0, params.r_lone}, {params.r_team, params.r_team}};
      EXPECT_TRUE(allowed.count(r.rewards));
      for (const GameEvent& e : r.events) {
        ASSERT_EQ(e.type, GameEvent::Type::kCapture);
        ++captures;
        EXPECT_TRUE(e.wolf_count == 1 || e.wolf_count == 2);
        EXPECT_GT(r.rewards[0] + r.rewards[1], 0.0);
        const double expected = e.wolf_count == 2 ? 2 * params.r_team : params.r_lone;
        EXPECT_DOUBLE_EQ(r.rewards[0] + r.rewards[1], expected);
      }
      if (r.events.empty()) EXPECT_EQ(r.rewards, (std::array<double, 2>{0, 0}));
    }
  }
  EXPECT_GT(captures, 0);
}

FrameRecord Frame(Action a0, Action a1, bool active0 = true, bool active1 = true) {
  FrameRecord f;
  f.actions = {a0, a1};
  f.active = {active0, active1};
  return f;
}

TEST(MetricsTest, BeamUseRate) {
  EpisodeLog log;
  for (int t = 0; t < 100; ++t) {
    log.Append(Frame(t < 10 ? Action::kUseBeam : Action::kStandStill, Action::kStandStill),
               {0.99, 0.99});
  }
  EXPECT_DOUBLE_EQ(BeamUseRate(log, 0), 0.1);
  EXPECT_DOUBLE_EQ(BeamUseRate(log, 1), 0.0);
}

TEST(MetricsTest, BeamUseRateExcludesRemovedFrames) {
  EpisodeLog log;
  for (int t = 0; t < 50; ++t) {
    log.Append(Frame(t < 5 ? Action::kUseBeam : Action::kStandStill, Action::kStandStill),
               {1, 1});
  }
  for (int t = 0; t < 5; ++t) log.Append(Frame(Action::kUseBeam, Action::kStandStill, true, false), {1, 1});
  EXPECT_DOUBLE_EQ(BeamUseRate(log, 0), 0.1);
  EXPECT_DOUBLE_EQ(BeamUseRate(EpisodeLog{}, 0), 0.0);
}

TEST(MetricsTest, WolvesPerCapture) {
  auto log_with = [](std::vector<int> counts) {
    EpisodeLog log;
    for (int c : counts) {
      FrameRecord f = Frame(Action::kStandStill, Action::kStandStill);
      f.events.push_back({GameEvent::Type::kCapture, 0, c});
      log.Append(f, {1, 1});
    }
    return log;
  };
  auto all_pairs = MeanWolvesPerCapture(log_with({2, 2, 2}));
  ASSERT_TRUE(all_pairs);
  EXPECT_DOUBLE_EQ(all_pairs->mean, 2.0);
  EXPECT_DOUBLE_EQ(all_pairs->plotted, 0.0);
  auto all_lone = MeanWolvesPerCapture(log_with({1, 1}));
  EXPECT_DOUBLE_EQ(all_lone->mean, 1.0);
  EXPECT_DOUBLE_EQ(all_lone->plotted, 1.0);
  auto mixed = MeanWolvesPerCapture(log_with({2, 2, 2, 1}));
  EXPECT_DOUBLE_EQ(mixed->mean, 1.75);
  EXPECT_DOUBLE_EQ(mixed->plotted, 0.25);
  EXPECT_FALSE(MeanWolvesPerCapture(log_with({})).has_value());
}

TEST(MetricsTest, ReturnsAccumulateDiscounted) {
  EpisodeLog log;
  FrameRecord f = Frame(Action::kStandStill, Action::kStandStill);
  f.rewards = {1.0, 2.0};
  log.Append(f, {0.5, 0.9});
  log.Append(f, {0.5, 0.9});
  EXPECT_DOUBLE_EQ(log.undiscounted_return[0], 2.0);
  EXPECT_DOUBLE_EQ(log.discounted_return[0], 1.5);
  EXPECT_DOUBLE_EQ(log.discounted_return[1], 2.0 + 0.9 * 2.0);
}

TEST(ParamsTest, Validation) {
  EXPECT_THROW((GatheringParams{0, 1}.Validate()), ParamError);
  EXPECT_THROW((GatheringParams{1, 0}.Validate()), ParamError);
  EXPECT_THROW((WolfpackParams{-1, 1, 1}.Validate()), ParamError);
  EXPECT_THROW((WolfpackParams{1, 2, 1}.Validate()), ParamError);
  EXPECT_THROW((WolfpackParams{1, 0, 1}.Validate()), ParamError);
  EXPECT_NO_THROW((WolfpackParams{0, 1, 1}.Validate()));
}

}  // namespace
}  // namespace ssdlab
