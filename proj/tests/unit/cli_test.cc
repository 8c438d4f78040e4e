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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssdlab/cli/cli.h"
#include "ssdlab/cli/figures.h"
#include "ssdlab/cli/replay.h"
#include "ssdlab/harness/metrics.h"

namespace ssdlab {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

int CountFrames(const std::string& text) {
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) n += line.rfind("frame ", 0) == 0;
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("ssdlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    WriteFile(dir_ / "maps" / "tiny.txt",
              "#########\n"
              "#1..A...#\n"
              "#..AAA..#\n"
              "#...A..2#\n"
              "#########\n");
    WriteFile(dir_ / "good.cfg",
              "game = gathering\nmap = maps/tiny.txt\nepisode_length = 10\n"
              "total_steps = 20\nseed = 3\n"
              "[agent]\nhidden = 4\nminibatch_size = 4\nlearning_starts = 8\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& rel) const { return (dir_ / rel).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ValidateConfig) {
  const Outcome ok = Cli({"validate-config", P("good.cfg")});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  WriteFile(dir_ / "bad.cfg", ReadFile(dir_ / "good.cfg") + "mystery = 1\n");
  EXPECT_EQ(Cli({"validate-config", P("bad.cfg")}).code, kExitConfig);
  WriteFile(dir_ / "sweep.cfg", ReadFile(dir_ / "good.cfg") +
                                    "[sweep]\ngathering.n_apple = 1 | 0\n");
  const Outcome cell = Cli({"validate-config", P("sweep.cfg")});
  EXPECT_EQ(cell.code, kExitConfig);
  EXPECT_NE(cell.err.find("gathering.n_apple=0"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli({"train", "--config", P("missing.cfg")}).code, kExitConfig);
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"train"}).code, kExitUsage);
  EXPECT_EQ(Cli({"classify", "--r", "3", "--p", "1", "--s", "0", "--t", "4", "--q", "1"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"launch"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
  EXPECT_EQ(Cli({"replay", "--checkpoints", P("none1"), P("none2"), "--config", P("good.cfg")}).code,
            kExitRuntime);
}

TEST_F(CliTest, ClassifyPrintsClassAndMotives) {
  const Outcome o = Cli({"classify", "--r", "3", "--p", "1", "--s", "0", "--t", "4"});
  EXPECT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out, "PrisonersDilemma greed=1 fear=1\n");
  EXPECT_EQ(Cli({"classify", "--r", "3", "--p", "0", "--s", "1", "--t", "4"}).out,
            "Chicken greed=1 fear=-1\n");
  EXPECT_EQ(Cli({"classify", "--r", "4", "--p", "1", "--s", "0", "--t", "3"}).out,
            "StagHunt greed=-1 fear=1\n");
}

TEST_F(CliTest, ReplayEmitsOneFramePerLoggedFrame) {
  WriteFile(dir_ / "arena.txt", "#####\n#1.2#\n#A..#\n#####\n");
  WriteFile(dir_ / "log.csv",
            "frame,agent1,agent2\n1,RotateRight,StandStill\n2,UseBeam,StandStill\n"
            "3,UseBeam,StandStill\n");
  const std::vector<std::string> args = {"replay", "--log", P("log.csv"), "--map", P("arena.txt")};
  const Outcome a = Cli(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(CountFrames(a.out), 3);
  // Player 2 is tagged by the second hit, in the last frame.
  const std::string last = a.out.substr(a.out.rfind("frame 3"));
  EXPECT_EQ(last.find('2', 7), std::string::npos);
  EXPECT_NE(last.find('1'), std::string::npos);
  EXPECT_EQ(Cli(args).out, a.out);
}

TEST_F(CliTest, ReplayRejectsIncompatibleLog) {
  WriteFile(dir_ / "log.csv", "frame,agent1,agent2,prey\n1,StepForward,StandStill,StandStill\n");
  EXPECT_EQ(Cli({"replay", "--log", P("log.csv"), "--config", P("good.cfg")}).code, kExitConfig);
  WriteFile(dir_ / "bad.csv", "frame,agent1,agent2\n1,Jump,StandStill\n");
  EXPECT_EQ(Cli({"replay", "--log", P("bad.csv"), "--config", P("good.cfg")}).code, kExitConfig);
}

TEST_F(CliTest, TrainThenReplayCheckpoints) {
  WriteFile(dir_ / "run.cfg",
            "game = gathering\nmap = maps/tiny.txt\nepisode_length = 10\n"
            "total_steps = 20\nseed = 3\nmetrics_path = out/m.csv\ncheckpoint_dir = out/ck\n"
            "[agent]\nhidden = 4\nminibatch_size = 4\nlearning_starts = 8\n");
  const Outcome t = Cli({"train", "--config", P("run.cfg")});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  const std::vector<MetricsRow> rows = ReadMetricsCsv(dir_ / "out/m.csv");
  EXPECT_EQ(rows.size(), 2u);
  const std::vector<std::string> args = {
      "replay", "--checkpoints", P("out/ck/agent1_final.ckpt"), P("out/ck/agent2_final.ckpt"),
      "--config", P("run.cfg"), "--frames", "7", "--seed", "5", "--log-out", P("played.csv")};
  const Outcome r1 = Cli(args);
  ASSERT_EQ(r1.code, kExitOk) << r1.err;
  EXPECT_EQ(CountFrames(r1.out), 7);
  const Outcome r2 = Cli(args);
  EXPECT_EQ(r1.out, r2.out);
  const Outcome again = Cli({"replay", "--log", P("played.csv"), "--config", P("run.cfg"),
                             "--seed", "5"});
  EXPECT_EQ(again.out, r1.out);
}

TEST_F(CliTest, SweepFigureAndEgtaPipeline) {
  WriteFile(dir_ / "sweep.cfg",
            "game = gathering\nmap = maps/tiny.txt\nepisode_length = 10\n"
            "total_steps = 20\nseed = 3\nmetrics_path = out/table.csv\ncheckpoint_dir = out/ck\n"
            "[agent]\nhidden = 4\nminibatch_size = 4\nlearning_starts = 8\n"
            "[sweep]\nseeds_per_cell = 2\ngathering.n_apple = 1 | 9\ngathering.n_tagged = 2 | 4\n");
  const Outcome s = Cli({"sweep", "--config", P("sweep.cfg"), "--parallelism", "2"});
  ASSERT_EQ(s.code, kExitOk) << s.err;

  const Outcome heat = Cli({"figure", "--kind", "heatmap", "--input", P("out/table.csv"), "--x",
                            "gathering.n_apple", "--y", "gathering.n_tagged"});
  ASSERT_EQ(heat.code, kExitOk) << heat.err;
  EXPECT_EQ(CountFrames(heat.out), 0);
  std::istringstream lines(heat.out);
  std::string line;
  std::vector<std::string> got;
  while (std::getline(lines, line)) got.push_back(line);
  ASSERT_EQ(got.size(), 5u);  // header + 4 cells
  EXPECT_EQ(got[0], "x,y,value");
  EXPECT_EQ(got[1].rfind("1,2,", 0), 0u);
  EXPECT_EQ(got[4].rfind("9,4,", 0), 0u);

  const Outcome curves = Cli({"figure", "--kind", "sweep-curves", "--input", P("out/table.csv"),
                              "--x", "gathering.n_apple"});
  ASSERT_EQ(curves.code, kExitOk);
  EXPECT_NE(curves.out.find("gathering.n_tagged=2,1,"), std::string::npos);

  const Outcome egta = Cli({"egta", "--config", P("good.cfg"), "--manifest", P("out/ck/manifest.csv"),
                            "--alpha-c", "0.2", "--alpha-d", "0.2", "--budget", "2",
                            "--out", P("out/report.csv"), "--pool-out", P("out/pools.csv")});
  // Random initial policies may all fall on one side; either the estimate
  // runs or an empty pool is reported as a runtime failure.
  if (egta.code == kExitOk) {
    const Outcome scatter =
        Cli({"figure", "--kind", "scatter", "--input", P("out/report.csv")});
    ASSERT_EQ(scatter.code, kExitOk) << scatter.err;
    EXPECT_EQ(scatter.out.rfind("fear,greed,class\n", 0), 0u);
  } else {
    EXPECT_EQ(egta.code, kExitRuntime);
    EXPECT_NE(egta.err.find("pool is empty"), std::string::npos);
  }
  EXPECT_EQ(ReadPoolManifest(dir_ / "out/pools.csv").size(), 16u);  // 4 cells x 2 seeds x 2 agents
}

TEST_F(CliTest, FigureSchemaErrors) {
  WriteFile(dir_ / "empty.csv", std::string(kMetricsHeader) + "\n");
  EXPECT_EQ(Cli({"figure", "--kind", "heatmap", "--input", P("empty.csv"), "--x", "a", "--y", "b"}).code,
            kExitConfig);
  WriteFile(dir_ / "junk.csv", "a,b\n1,2\n");
  EXPECT_EQ(Cli({"figure", "--kind", "sweep-curves", "--input", P("junk.csv"), "--x", "a"}).code,
            kExitConfig);
  EXPECT_EQ(Cli({"figure", "--kind", "pie", "--input", P("junk.csv")}).code, kExitUsage);
}

TEST(FiguresTest, HeatmapHasOneRowPerCell) {
  std::vector<MetricsRow> rows;
  for (const char* id : {"a=1;b=1", "a=1;b=2", "a=2;b=1", "a=2;b=2"}) {
    for (uint64_t seed : {0, 1}) {
      for (int agent : {1, 2}) {
        rows.push_back({id, seed, 10, agent, 0, "beam_use_rate", 0.1, 0.5, 0});
        rows.push_back({id, seed, 20, agent, 0, "beam_use_rate", seed * 0.5 + agent * 0.25, 0.5, 0});
      }
    }
  }
  const std::string csv = HeatmapCsv(rows, "a", "b");
  // Final step only: mean over seeds of the mean over agents = 0.625.
  EXPECT_EQ(csv, "x,y,value\n1,1,0.625\n1,2,0.625\n2,1,0.625\n2,2,0.625\n");
  EXPECT_THROW(HeatmapCsv(rows, "a", "c"), SchemaMismatch);
  EXPECT_THROW(HeatmapCsv({}, "a", "b"), SchemaMismatch);
}

TEST(FiguresTest, ScatterRow) {
  EmpiricalPayoffMatrix m;
  m.R.mean = 3;
  m.P.mean = 1;
  m.S.mean = 0;
  m.T.mean = 4;
  EXPECT_EQ(ScatterCsv({m}), "fear,greed,class\n1,1,PrisonersDilemma\n");
  EXPECT_THROW(ScatterCsv({}), SchemaMismatch);
}

TEST(ReplayTest, AsciiGlyphs) {
  auto map = std::make_shared<const GridMap>(LoadMap("######\n#1.A2#\n#.P..#\n######\n"));
  WorldState s = MakeWolfpackState(map, 0);
  EXPECT_EQ(RenderAscii(s), "######\n#1..2#\n#.p..#\n######\n");
  WorldState g = MakeGatheringState(
      std::make_shared<const GridMap>(LoadMap("######\n#1.A2#\n#....#\n######\n")), 0);
  g.entities[1].orientation = Orientation::kWest;
  CastBeam(g, 1);
  EXPECT_EQ(RenderAscii(g), "######\n#1--2#\n#....#\n######\n");
  g.beams.clear();
  g.entities[0].orientation = Orientation::kSouth;
  CastBeam(g, 0);
  RemoveEntity(g, 1, 3);
  EXPECT_EQ(RenderAscii(g), "######\n#1.a.#\n#|...#\n######\n");
}

}  // namespace
}  // namespace ssdlab
