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

#include "ssdlab/harness/train.h"

#include <fmt/core.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ssdlab/harness/episode.h"
#include "ssdlab/learner/checkpoint.h"

namespace ssdlab {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::array<MetricsRow, 2> Evaluate(const GameConfig& game,
                                   std::span<Policy* const> policies,
                                   int episodes, double eval_epsilon,
                                   uint64_t seed) {
  Environment env(game);
  std::vector<EpisodeLog> logs;
  std::array<double, 2> total = {0.0, 0.0};
  for (int k = 0; k < episodes; ++k) {
    Rng rng(DeriveSeed(seed, "policy", k));
    EpisodeOptions opts;
    opts.env_seed = DeriveSeed(seed, "env", k);
    opts.eval_epsilon = eval_epsilon;
    logs.push_back(RunEpisode(env, policies, Mode::kEval, rng, opts));
    for (int i = 0; i < 2; ++i) total[i] += logs.back().undiscounted_return[i];
  }
  std::array<MetricsRow, 2> rows;
  std::optional<WolvesPerCapture> wolves;
  if (game.game == GameKind::kWolfpack) wolves = MeanWolvesPerCapture(logs);
  for (int i = 0; i < 2; ++i) {
    MetricsRow& r = rows[i];
    r.agent = i + 1;
    r.ret = total[i] / episodes;
    r.metric_name = std::string(game.metric_name());
    if (game.game == GameKind::kGathering) {
      r.metric_value = BeamUseRate(logs, i);
    } else {
      r.metric_value = wolves ? wolves->mean : kNaN;
    }
  }
  return rows;
}

TrainResult Train(const ExperimentConfig& cfg, const std::string& cell_id) {
  Environment env(cfg.game);
  QAgent a0(cfg.agents[0], DeriveSeed(cfg.seed, "init", 0),
            DeriveSeed(cfg.seed, "agent", 0));
  QAgent a1(cfg.agents[1], DeriveSeed(cfg.seed, "init", 1),
            DeriveSeed(cfg.seed, "agent", 1));
  std::array<QAgent*, 2> learners = {&a0, &a1};
  std::array<Policy*, 2> policies = {&a0, &a1};

  TrainResult result;
  LossTally window;
  std::array<MetricsRow, 2> last{};
  int64_t done = 0;

  auto checkpoint = [&](const std::string& tag) {
    if (cfg.checkpoint_dir.empty()) return;
    for (int i = 0; i < 2; ++i) {
      const fs::path path = cfg.checkpoint_dir / fmt::format("agent{}_{}.ckpt", i + 1, tag);
      SavePolicy(learners[i]->net(), learners[i]->training_step(), path);
      result.checkpoints.push_back(path);
    }
  };
  auto evaluate = [&](int64_t step) {
    last = Evaluate(cfg.game, policies, cfg.eval_episodes, cfg.eval_epsilon,
                    DeriveSeed(cfg.seed, "eval", static_cast<uint64_t>(step)));
    for (int i = 0; i < 2; ++i) {
      MetricsRow row = last[i];
      row.cell_id = cell_id;
      row.seed = cfg.seed;
      row.step = step;
      row.epsilon = learners[i]->current_epsilon();
      row.loss = window.Mean(i).value_or(kNaN);
      result.rows.push_back(std::move(row));
    }
    window = LossTally{};
  };

  Rng unused(DeriveSeed(cfg.seed, "scripted", 0));
  while (done < cfg.total_steps) {
    EpisodeOptions opts;
    opts.env_seed = DeriveSeed(cfg.seed, "env", static_cast<uint64_t>(result.episodes));
    opts.frames = static_cast<int>(
        std::min<int64_t>(cfg.game.episode_length, cfg.total_steps - done));
    opts.losses = &window;
    const int64_t start = done;
    opts.after_frame = [&](int t) {
      const int64_t step = start + t;
      done = step;
      if (cfg.eval_interval > 0 && step % cfg.eval_interval == 0 &&
          step != cfg.total_steps) {
        evaluate(step);
      }
      if (cfg.checkpoint_interval > 0 && step % cfg.checkpoint_interval == 0 &&
          step != cfg.total_steps) {
        checkpoint(fmt::format("step{}", step));
      }
    };
    RunEpisode(env, policies, Mode::kTrain, unused, opts);
    ++result.episodes;
  }
  result.frames = done;
  evaluate(done);
  checkpoint("final");

  if (!cfg.checkpoint_dir.empty()) {
    for (int i = 0; i < 2; ++i) {
      result.pool.push_back(
          {cfg.checkpoint_dir / fmt::format("agent{}_final.ckpt", i + 1),
           last[i].metric_value, ""});
    }
    WritePoolManifest(result.pool, cfg.checkpoint_dir / "manifest.csv");
  }
  if (!cfg.metrics_path.empty()) WriteMetricsCsv(result.rows, cfg.metrics_path);
  result.nets = {a0.net(), a1.net()};
  return result;
}

void WritePoolManifest(const std::vector<PoolEntry>& pool, const fs::path& path) {
  const fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  out << "checkpoint,metric,label\n";
  for (const PoolEntry& e : pool) {
    const fs::path rel = dir.empty() ? e.checkpoint : e.checkpoint.lexically_relative(dir);
    out << fmt::format("{},{},{}\n", rel.generic_string(), e.metric, e.label);
  }
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
}

std::vector<PoolEntry> ReadPoolManifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot read {}", path.string()));
  std::string line;
  if (!std::getline(in, line) || line != "checkpoint,metric,label") {
    throw std::runtime_error(fmt::format("{}: bad manifest header", path.string()));
  }
  std::vector<PoolEntry> pool;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string ckpt, metric, label;
    std::getline(ss, ckpt, ',');
    std::getline(ss, metric, ',');
    std::getline(ss, label);
    char* end = nullptr;
    const double m = std::strtod(metric.c_str(), &end);
    if (ckpt.empty() || metric.empty() || end != metric.c_str() + metric.size() ||
        !(label.empty() || label == "C" || label == "D")) {
      throw std::runtime_error(fmt::format("{}: bad manifest row '{}'", path.string(), line));
    }
    fs::path p(ckpt);
    if (p.is_relative()) p = path.parent_path() / p;
    pool.push_back({p, m, label});
  }
  return pool;
}

}  // namespace ssdlab
