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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers to run a subset.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ssdlab/egta/egta.h"
#include "ssdlab/harness/config.h"
#include "ssdlab/harness/episode.h"
#include "ssdlab/harness/sweep.h"
#include "ssdlab/harness/train.h"
#include "ssdlab/learner/td_update.h"
#include "support/random_world.h"
#include "support/reference_renderer.h"
#include "support/scripted_policies.h"

namespace ssdlab {
namespace {

namespace fs = std::filesystem;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ssdlab_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Verdict CanonicalClassification() {
  using K = DilemmaClass::Kind;
  const bool chicken = ClassifyMatrix(3, 0, 1, 4).kind == K::kChicken;
  const bool stag = ClassifyMatrix(4, 1, 0, 3).kind == K::kStagHunt;
  const bool pd = ClassifyMatrix(3, 1, 0, 4).kind == K::kPrisonersDilemma;
  return {chicken && stag && pd,
          fmt::format("Chicken={} StagHunt={} PrisonersDilemma={}", chicken, stag, pd)};
}

Verdict InequalityChecker() {
  Rng rng(20260101);
  int mismatches = 0;
  constexpr int kTuples = 100000;
  for (int k = 0; k < kTuples; ++k) {
    double v[4];
    for (double& x : v) {
      // Small integers hit the boundaries; reals cover the interior.
      x = k % 2 ? rng.Uniform(-10, 10) : static_cast<double>(rng.UniformInt(4));
    }
    const double R = v[0], P = v[1], S = v[2], T = v[3];
    const std::array<bool, 4> oracle = {R > P, R > S, 2 * R > T + S, T > R || P > S};
    if (CheckSsdInequalities(R, P, S, T).holds != oracle) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} tuples, {} mismatches", kTuples, mismatches)};
}

Verdict GradientCorrectness() {
  Rng rng(7);
  constexpr double kStep = 1e-6;
  constexpr int kNets = 150;
  double worst = 0.0;
  long params = 0;
  for (int trial = 0; trial < kNets; ++trial) {
    std::vector<int> dims = {1 + static_cast<int>(rng.UniformInt(8))};
    const int hidden = static_cast<int>(rng.UniformInt(3));
    for (int h = 0; h < hidden; ++h) dims.push_back(1 + static_cast<int>(rng.UniformInt(8)));
    dims.push_back(kNumActions);
    QNetwork net = QNetwork::Random(dims, rng, trial % 4 != 0);
    const int n = 1 + static_cast<int>(rng.UniformInt(6));
    TransitionBatch b;
    b.states.resize(dims[0], n);
    b.next_states.resize(dims[0], n);
    b.rewards.resize(n);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < dims[0]; ++i) {
        b.states(i, k) = rng.Bernoulli(0.3) ? 0.0 : rng.Uniform(-2, 2);
        b.next_states(i, k) = rng.Uniform(-2, 2);
      }
      b.actions.push_back(static_cast<int>(rng.UniformInt(kNumActions)));
      b.rewards(k) = rng.Uniform(-1, 1);
      b.terminal.push_back(rng.Bernoulli(0.2));
    }
    const Eigen::VectorXd targets = BootstrapTargets(net, b, 0.9);
    Gradients g;
    BellmanLossAndGradient(net, b, targets, &g);
    auto check = [&](double& param, double analytic) {
      const double saved = param;
      param = saved + kStep;
      const double up = BellmanLoss(net, b, targets);
      param = saved - kStep;
      const double down = BellmanLoss(net, b, targets);
      param = saved;
      const double numeric = (up - down) / (2 * kStep);
      const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
      worst = std::max(worst, std::abs(analytic - numeric) / denom);
      ++params;
    };
    for (int l = 0; l < net.num_layers(); ++l) {
      for (int i = 0; i < net.weights(l).rows(); ++i) {
        for (int j = 0; j < net.weights(l).cols(); ++j) check(net.weights(l)(i, j), g.weights[l](i, j));
        if (net.with_bias()) check(net.bias(l)(i), g.biases[l](i));
      }
    }
  }
  return {worst < 1e-4,
          fmt::format("{} networks, {} parameters, max relative error {:.3g}", kNets, params, worst)};
}

Verdict TabularOracle() {
  constexpr int kStates = 5;
  constexpr double kGamma = 0.8;
  auto next = [](int s, int a) { return a == 0 ? std::max(s - 1, 0) : std::min(s + 1, kStates - 1); };
  auto reward = [](int s, int a) {
    if (s == kStates - 1 && a == 1) return 1.0;
    if (s == 0 && a == 0) return 0.3;
    return 0.0;
  };
  double vi[kStates][2] = {};
  for (int it = 0; it < 2000; ++it) {
    double nv[kStates][2];
    for (int s = 0; s < kStates; ++s) {
      for (int a = 0; a < 2; ++a) {
        const int s2 = next(s, a);
        nv[s][a] = reward(s, a) + kGamma * std::max(vi[s2][0], vi[s2][1]);
      }
    }
    std::copy(&nv[0][0], &nv[0][0] + 2 * kStates, &vi[0][0]);
  }

  // Off-policy: uniformly random behaviour on a deterministic chain, so a
  // constant step size contracts to the fixed point.
  constexpr int kSeeds = 10;
  double worst = 0;
  for (int seed = 0; seed < kSeeds; ++seed) {
    QNetwork net({kStates, kNumActions}, /*with_bias=*/false);
    net.weights(0).bottomRows(kNumActions - 2).setConstant(-1000.0);
    LearnerConfig cfg;
    cfg.gamma = kGamma;
    cfg.learning_rate = 0.25;
    Rng rng(seed);
    int s = 0;
    for (int t = 0; t < 20000; ++t) {
      if (t % 25 == 0) s = static_cast<int>(rng.UniformInt(kStates));
      const int a = static_cast<int>(rng.UniformInt(2));
      TransitionBatch b;
      b.states = Eigen::MatrixXd::Zero(kStates, 1);
      b.next_states = Eigen::MatrixXd::Zero(kStates, 1);
      b.states(s, 0) = 1.0;
      b.next_states(next(s, a), 0) = 1.0;
      b.actions = {a};
      b.rewards = Eigen::VectorXd::Constant(1, reward(s, a));
      b.terminal = {0};
      TdUpdate(net, b, cfg);
      s = next(s, a);
    }
    for (int i = 0; i < kStates; ++i) {
      for (int a = 0; a < 2; ++a) worst = std::max(worst, std::abs(net.weights(0)(a, i) - vi[i][a]));
    }
  }
  return {worst < 1e-2, fmt::format("worst L-infinity distance to value iteration over {} seeds {:.3g}", kSeeds, worst)};
}

constexpr char kDeterminismConfig[] =
    "game = gathering\n"
    "map = arena.txt\n"
    "episode_length = 100\n"
    "total_steps = 3000\n"
    "seed = 11\n"
    "eval_interval = 1000\n"
    "checkpoint_interval = 1500\n"
    "metrics_path = metrics.csv\n"
    "checkpoint_dir = ckpt\n"
    "[agent]\n"
    "hidden = 16\n"
    "learning_starts = 200\n";

constexpr char kDeterminismMap[] =
    "##########\n"
    "#1.......#\n"
    "#...AA...#\n"
    "#..AAAA..#\n"
    "#...AA..2#\n"
    "##########\n";

// Compares every regular file under a and b, which must hold the same tree.
bool SameTree(const fs::path& a, const fs::path& b, int* files) {
  std::set<fs::path> names_a, names_b;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) names_a.insert(fs::relative(e.path(), a));
  }
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) names_b.insert(fs::relative(e.path(), b));
  }
  if (names_a != names_b) return false;
  *files = static_cast<int>(names_a.size());
  for (const fs::path& rel : names_a) {
    if (ReadFile(a / rel) != ReadFile(b / rel)) return false;
  }
  return true;
}

Verdict EngineDeterminism() {
  const fs::path dir = ScratchDir("determinism");
  for (const char* run : {"train_a", "train_b", "sweep_p1", "sweep_p8"}) {
    fs::create_directories(dir / run);
    std::ofstream(dir / run / "arena.txt") << kDeterminismMap;
    std::string text = kDeterminismConfig;
    if (std::string(run).rfind("sweep", 0) == 0) {
      text += "[sweep]\nseeds_per_cell = 2\ngathering.n_apple = 3 | 30\n";
    }
    std::ofstream(dir / run / "run.cfg") << text;
  }
  Train(LoadExperimentConfig(dir / "train_a" / "run.cfg"));
  Train(LoadExperimentConfig(dir / "train_b" / "run.cfg"));
  RunSweep(LoadSweepSpec(dir / "sweep_p1" / "run.cfg"), 1);
  RunSweep(LoadSweepSpec(dir / "sweep_p8" / "run.cfg"), 8);
  int train_files = 0, sweep_files = 0;
  const bool train_same = SameTree(dir / "train_a", dir / "train_b", &train_files);
  const bool sweep_same = SameTree(dir / "sweep_p1", dir / "sweep_p8", &sweep_files);
  fs::remove_all(dir);
  return {train_same && sweep_same && train_files > 2 && sweep_files > 2,
          fmt::format("repeat run identical={} ({} files), sweep parallelism 1 vs 8 identical={} "
                      "({} files)",
                      train_same, train_files, sweep_same, sweep_files)};
}

Verdict RenderOracle() {
  Rng rng(424242);
  int states = 0, views = 0, mismatches = 0;
  while (states < 2000) {
    const WorldState s = testing::RandomWorld(rng, 8 + static_cast<int>(rng.UniformInt(25)),
                                              8 + static_cast<int>(rng.UniformInt(25)));
    ++states;
    for (const EntityState& e : s.entities) {
      if (!e.active) continue;
      ++views;
      if (!(RenderObservation(s, e.id) == testing::ReferenceRender(s, e.id))) ++mismatches;
    }
  }
  return {mismatches == 0,
          fmt::format("{} states, {} views, {} mismatches", states, views, mismatches)};
}

std::array<double, 2> Playout(const GameConfig& g, Policy& a, Policy& b, uint64_t seed) {
  Environment env(g);
  env.Reset(seed);
  Rng rng(seed);
  std::array<double, 2> ret = {0, 0};
  for (int t = 0; t < g.episode_length; ++t) {
    const Action joint[] = {a.Act(env.Observe(0), 0.0, rng), b.Act(env.Observe(1), 0.0, rng)};
    const StepResult r = env.Step(joint);
    ret[0] += r.rewards[0];
    ret[1] += r.rewards[1];
  }
  return ret;
}

Verdict EgtaExactness() {
  GameConfig g;
  g.map = std::make_shared<const GridMap>(LoadMap(testing::kMirrorCorridor));
  g.gathering = {5, 3};
  g.episode_length = 100;
  testing::Gatherer c1, c2;
  testing::Aggressor d1, d2;
  const auto cc = Playout(g, c1, c2, 0);
  const auto cd = Playout(g, c1, d1, 0);
  const auto dd = Playout(g, d1, d2, 0);

  PolicyPools pools;
  for (int k = 0; k < 3; ++k) {
    pools.cooperators.push_back(
        {fmt::format("gatherer{}", k), 0.0, [] { return std::make_unique<testing::Gatherer>(); }});
    pools.defectors.push_back(
        {fmt::format("aggressor{}", k), 1.0, [] { return std::make_unique<testing::Aggressor>(); }});
  }
  EstimateOptions opts;
  opts.seed = 5;
  opts.eval_epsilon = 0.0;
  opts.episodes_per_draw = 5;
  const EmpiricalPayoffMatrix m = EstimatePayoffs(g, pools, opts);
  const bool exact = m.R.mean == cc[0] && m.P.mean == dd[0] && m.S.mean == cd[0] && m.T.mean == cd[1];
  const bool zero_se = m.R.se == 0 && m.P.se == 0 && m.S.se == 0 && m.T.se == 0;
  return {exact && zero_se,
          fmt::format("R={} P={} S={} T={} (playouts {} {} {} {}), max SE {}, {} rounds", m.R.mean,
                      m.P.mean, m.S.mean, m.T.mean, cc[0], dd[0], cd[0], cd[1],
                      std::max({m.R.se, m.P.se, m.S.se, m.T.se}), m.rounds)};
}

// Mean of the metric over both agents and every evaluation point from
// `from_step` on, per (cell, seed).
std::map<std::pair<std::string, uint64_t>, double> LateMetricMeans(
    const std::vector<MetricsRow>& rows, long from_step) {
  std::map<std::pair<std::string, uint64_t>, std::pair<double, int>> acc;
  for (const MetricsRow& r : rows) {
    if (r.step < from_step || std::isnan(r.metric_value)) continue;
    auto& [sum, n] = acc[{r.cell_id, r.seed}];
    sum += r.metric_value;
    ++n;
  }
  std::map<std::pair<std::string, uint64_t>, double> out;
  for (const auto& [key, v] : acc) out[key] = v.first / v.second;
  return out;
}

// Runs a two-cell sweep and checks, seed by seed, that the metric under the
// cell named `high` exceeds the one under `low`.
Verdict SeedPairedTrend(const fs::path& config, const std::string& low, const std::string& high) {
  const SweepSpec spec = LoadSweepSpec(config);
  const std::vector<SweepCell> cells = spec.Cells();
  const SweepResult result = RunSweep(spec, 1);
  if (!result.failures.empty()) return {false, "run failed: " + result.failures[0].message};
  const long total_steps = BuildExperimentConfig(spec.base, spec.base_dir).total_steps;
  const auto means = LateMetricMeans(result.rows, total_steps / 2);
  const uint64_t base_seed = std::stoull(spec.base.at("seed"));
  int wins = 0;
  std::string detail;
  for (int k = 0; k < spec.seeds_per_cell; ++k) {
    const uint64_t seed = base_seed + k;
    auto lo = means.find({low, seed});
    auto hi = means.find({high, seed});
    const double l = lo == means.end() ? NAN : lo->second;
    const double h = hi == means.end() ? NAN : hi->second;
    wins += h > l;
    detail += fmt::format("{}seed {}: {:.4f} vs {:.4f}", k ? "; " : "", seed, h, l);
  }
  const int needed = (2 * spec.seeds_per_cell + 2) / 3;
  return {wins >= needed,
          fmt::format("{} > {} in {}/{} seed pairs ({})", high, low, wins, spec.seeds_per_cell, detail)};
}

Verdict ScarcityTrend() {
  return SeedPairedTrend(fs::path(SSDLAB_CONFIGS_DIR) / "scarcity_trend.cfg",
                         "gathering.n_apple=5", "gathering.n_apple=150");
}

Verdict GroupBonusTrend() {
  return SeedPairedTrend(fs::path(SSDLAB_CONFIGS_DIR) / "group_bonus_trend.cfg",
                         "wolfpack.r_team=1", "wolfpack.r_team=5");
}

Verdict Throughput() {
  GameConfig g;
  g.map = std::make_shared<const GridMap>(LoadMapFile(fs::path(SSDLAB_MAPS_DIR) / "gathering.txt"));
  Environment env(g);
  env.Reset(1);
  Rng rng(1);
  long frames = 0;
  uint64_t checksum = 0;
  const auto start = std::chrono::steady_clock::now();
  double elapsed = 0.0;
  while (elapsed < 3.0) {
    for (int k = 0; k < 1000; ++k) {
      if (env.state().step >= g.episode_length) env.Reset(rng.NextU64());
      // Each frame renders both players' views, as a learner would consume.
      for (int i = 0; i < 2; ++i) checksum += env.Observe(i).code(0, 0) == Palette::kBackground;
      const Action joint[] = {static_cast<Action>(rng.UniformInt(kNumActions)),
                              static_cast<Action>(rng.UniformInt(kNumActions))};
      env.Step(joint);
      ++frames;
    }
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const double rate = frames / elapsed;
  return {rate >= 50000.0, fmt::format("{:.0f} frames/s with observations ({} frames, checksum {})",
                                       rate, frames, checksum % 7)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace ssdlab

int main(int argc, char** argv) {
  using namespace ssdlab;
  const std::vector<Criterion> criteria = {
      {1, "canonical classification", CanonicalClassification},
      {2, "inequality checker", InequalityChecker},
      {3, "gradient correctness", GradientCorrectness},
      {4, "tabular Q-learning oracle", TabularOracle},
      {5, "engine determinism", EngineDeterminism},
      {6, "render oracle equivalence", RenderOracle},
      {7, "EGTA estimator exactness", EgtaExactness},
      {8, "scarcity to aggression trend", ScarcityTrend},
      {9, "group bonus to cooperation trend", GroupBonusTrend},
      {10, "throughput floor", Throughput},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    fmt::print("[{}] {} {}: {} ({:.1f}s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail, secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
