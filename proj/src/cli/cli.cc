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

#include "ssdlab/cli/cli.h"

#include <fmt/core.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "ssdlab/cli/figures.h"
#include "ssdlab/cli/replay.h"
#include "ssdlab/egta/egta.h"
#include "ssdlab/harness/episode.h"
#include "ssdlab/harness/sweep.h"
#include "ssdlab/harness/train.h"
#include "ssdlab/learner/checkpoint.h"

namespace ssdlab {
namespace {

namespace fs = std::filesystem;

// Input that cannot be used as given; maps to the config exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot read {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path));
}

ExperimentConfig LoadConfigWithSeed(const std::string& path,
                                    std::optional<uint64_t> seed) {
  RawConfig raw = LoadRawConfig(path);
  if (seed) raw["seed"] = std::to_string(*seed);
  return BuildExperimentConfig(raw, fs::path(path).parent_path());
}

int Train(const std::string& config, std::optional<uint64_t> seed,
          std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = LoadConfigWithSeed(config, seed);
  const TrainResult r = Train(cfg);
  err << fmt::format("trained {} frames in {} episodes\n", r.frames, r.episodes);
  if (cfg.metrics_path.empty()) out << FormatMetricsCsv(r.rows);
  return kExitOk;
}

int Sweep(const std::string& config, int parallelism, std::ostream& out,
          std::ostream& err) {
  const SweepSpec spec = LoadSweepSpec(config);
  const SweepResult r = RunSweep(spec, parallelism);
  if (!spec.base.count("metrics_path")) out << FormatMetricsCsv(r.rows);
  err << fmt::format("{} of {} runs completed\n", r.completed, r.runs);
  for (const RunFailure& f : r.failures) {
    err << fmt::format("failed: cell '{}' seed {}: {}\n", f.cell_id, f.seed, f.message);
  }
  return r.failures.empty() ? kExitOk : kExitRuntime;
}

struct EgtaArgs {
  std::string config, manifest, out, pool_out;
  std::optional<double> alpha_c, alpha_d, tolerance;
  uint64_t seed = 0;
  int budget = 1000;
  int episodes_per_draw = 1;
};

int Egta(const EgtaArgs& a, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = LoadExperimentConfig(a.config);
  std::vector<PoolEntry> entries;
  try {
    entries = ReadPoolManifest(a.manifest);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  if (a.alpha_c.has_value() != a.alpha_d.has_value()) {
    throw InputError("--alpha-c and --alpha-d go together");
  }
  Thresholds t;
  if (a.alpha_c) {
    t = {*a.alpha_c, *a.alpha_d};
  } else {
    std::vector<double> metrics;
    for (const PoolEntry& e : entries) {
      if (e.label.empty()) metrics.push_back(e.metric);
    }
    if (!metrics.empty()) t = PercentileThresholds(metrics);
  }
  const MetricSense sense = cfg.game.game == GameKind::kGathering
                                ? MetricSense::kLowCooperates
                                : MetricSense::kHighCooperates;
  std::vector<PoolEntry> labelled;
  const PolicyPools pools = BuildPools(entries, t, sense, &labelled);
  if (!a.pool_out.empty()) WritePoolManifest(labelled, a.pool_out);
  err << fmt::format("alpha_c={} alpha_d={} cooperators={} defectors={}\n",
                     t.alpha_c, t.alpha_d, pools.cooperators.size(),
                     pools.defectors.size());
  EstimateOptions opts;
  opts.seed = a.seed;
  opts.budget = a.budget;
  opts.episodes_per_draw = a.episodes_per_draw;
  opts.eval_epsilon = cfg.eval_epsilon;
  if (a.tolerance) opts.tolerance = *a.tolerance;
  const EmpiricalPayoffMatrix m = EstimatePayoffs(cfg.game, pools, opts);
  Emit(FormatPayoffReport(m), a.out, out);
  if (m.budget_exhausted) err << "episode budget exhausted before convergence\n";
  return kExitOk;
}

int Classify(double r, double p, double s, double t, std::ostream& out) {
  const DilemmaClass c = ClassifyMatrix(r, p, s, t);
  out << fmt::format("{} greed={} fear={}", c.Name(), t - r, p - s);
  if (!c.failed.empty()) {
    std::string failed;
    for (int k : c.failed) failed += (failed.empty() ? "" : ",") + std::to_string(k);
    out << " failed=" << failed;
  }
  out << "\n";
  return kExitOk;
}

struct ReplayArgs {
  std::string log, config, map, game = "gathering", log_out;
  std::vector<std::string> checkpoints;
  uint64_t seed = 0;
  int frames = 0;
};

int Replay(const ReplayArgs& a, std::ostream& out) {
  GameConfig game;
  double eval_epsilon = 0.05;
  if (!a.config.empty()) {
    const ExperimentConfig cfg = LoadExperimentConfig(a.config);
    game = cfg.game;
    eval_epsilon = cfg.eval_epsilon;
  } else if (!a.map.empty()) {
    if (a.game != "gathering" && a.game != "wolfpack") {
      throw InputError(fmt::format("unknown game '{}'", a.game));
    }
    game.game = a.game == "gathering" ? GameKind::kGathering : GameKind::kWolfpack;
    game.map = std::make_shared<const GridMap>(LoadMapFile(a.map));
  } else {
    throw InputError("replay needs --config or --map");
  }
  if (a.frames > 0) game.episode_length = a.frames;

  std::vector<std::vector<Action>> actions;
  if (!a.log.empty()) {
    actions = ParseActionLog(ReadText(a.log));
    if (a.frames > 0 && static_cast<size_t>(a.frames) < actions.size()) {
      actions.resize(a.frames);
    }
  } else {
    GreedyPolicy p0(LoadPolicy(a.checkpoints.at(0)).net);
    GreedyPolicy p1(LoadPolicy(a.checkpoints.at(1)).net);
    std::array<Policy*, 2> agents = {&p0, &p1};
    Environment env(game);
    Rng rng(DeriveSeed(a.seed, "policy", 0));
    EpisodeOptions opts;
    opts.env_seed = a.seed;
    opts.eval_epsilon = eval_epsilon;
    const EpisodeLog log = RunEpisode(env, agents, Mode::kEval, rng, opts);
    const std::string text = FormatActionLog(log, game.game);
    if (!a.log_out.empty()) Emit(text, a.log_out, out);
    actions = ParseActionLog(text);
  }
  out << ReplayActions(game, actions, a.seed);
  return kExitOk;
}

int ValidateConfig(const std::string& path, std::ostream& out) {
  const SweepSpec spec = LoadSweepSpec(path);
  const std::vector<SweepCell> cells = spec.Cells();
  for (const SweepCell& cell : cells) {
    try {
      BuildExperimentConfig(spec.CellConfig(cell), spec.base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError(cell.id.empty() ? e.what()
                                        : fmt::format("cell '{}': {}", cell.id, e.what()));
    }
  }
  out << fmt::format("ok: {} cell(s), {} seed(s) per cell\n", cells.size(),
                     spec.seeds_per_cell);
  return kExitOk;
}

struct FigureArgs {
  std::string kind, x, y, out;
  std::vector<std::string> inputs;
};

int Figure(const FigureArgs& a, std::ostream& out) {
  std::string text;
  if (a.kind == "scatter") {
    std::vector<EmpiricalPayoffMatrix> matrices;
    for (const std::string& in : a.inputs) {
      try {
        matrices.push_back(ParsePayoffReport(ReadText(in)));
      } catch (const std::runtime_error& e) {
        throw SchemaMismatch(fmt::format("{}: {}", in, e.what()));
      }
    }
    text = ScatterCsv(matrices);
  } else {
    std::vector<MetricsRow> rows;
    for (const std::string& in : a.inputs) {
      try {
        for (MetricsRow& r : ParseMetricsCsv(ReadText(in))) rows.push_back(std::move(r));
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        throw SchemaMismatch(fmt::format("{}: {}", in, e.what()));
      }
    }
    if (a.x.empty()) throw InputError("--x is required");
    if (a.kind == "heatmap") {
      if (a.y.empty()) throw InputError("--y is required for a heatmap");
      text = HeatmapCsv(rows, a.x, a.y);
    } else {
      text = SweepCurvesCsv(rows, a.x);
    }
  }
  Emit(text, a.out, out);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Two-player gridworld social dilemma experiments", "ssdlab"};
  app.require_subcommand(1);

  std::string config;
  std::optional<uint64_t> train_seed;
  auto* train = app.add_subcommand("train", "Train two independent learners");
  train->add_option("--config", config, "Experiment config")->required();
  train->add_option("--seed", train_seed, "Override the config seed");

  int parallelism = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", config, "Sweep config")->required();
  sweep->add_option("--parallelism", parallelism, "Concurrent runs")
      ->check(CLI::PositiveNumber);

  EgtaArgs egta_args;
  auto* egta = app.add_subcommand("egta", "Estimate the empirical payoff matrix");
  egta->add_option("--config", egta_args.config, "Experiment config")->required();
  egta->add_option("--manifest", egta_args.manifest, "Policy pool manifest")->required();
  egta->add_option("--alpha-c", egta_args.alpha_c, "Cooperator threshold");
  egta->add_option("--alpha-d", egta_args.alpha_d, "Defector threshold");
  egta->add_option("--out", egta_args.out, "Payoff report path");
  egta->add_option("--pool-out", egta_args.pool_out, "Labelled manifest path");
  egta->add_option("--seed", egta_args.seed, "Sampling seed");
  egta->add_option("--tolerance", egta_args.tolerance, "Standard error target");
  egta->add_option("--budget", egta_args.budget, "Maximum rounds")->check(CLI::PositiveNumber);
  egta->add_option("--episodes-per-draw", egta_args.episodes_per_draw, "Episodes per draw")
      ->check(CLI::PositiveNumber);

  double r = 0, p = 0, s = 0, t = 0;
  auto* classify = app.add_subcommand("classify", "Classify a 2x2 matrix game");
  classify->add_option("--r", r, "Reward for mutual cooperation")->required();
  classify->add_option("--p", p, "Punishment for mutual defection")->required();
  classify->add_option("--s", s, "Sucker payoff")->required();
  classify->add_option("--t", t, "Temptation payoff")->required();

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Print an episode as ASCII frames");
  auto* log_opt = replay->add_option("--log", replay_args.log, "Action log CSV");
  auto* ckpt_opt = replay->add_option("--checkpoints", replay_args.checkpoints,
                                      "Two policy checkpoints")
                       ->expected(2);
  log_opt->excludes(ckpt_opt);
  replay->add_option("--config", replay_args.config, "Experiment config");
  replay->add_option("--map", replay_args.map, "Map file");
  replay->add_option("--game", replay_args.game, "gathering or wolfpack");
  replay->add_option("--seed", replay_args.seed, "Episode seed");
  replay->add_option("--frames", replay_args.frames, "Frames to show");
  replay->add_option("--log-out", replay_args.log_out, "Write the played action log");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "Check a config file");
  validate->add_option("config", validate_path, "Config file")->required();

  FigureArgs figure_args;
  auto* figure = app.add_subcommand("figure", "Emit plot-ready data");
  figure->add_option("--kind", figure_args.kind, "heatmap, sweep-curves or scatter")
      ->required()
      ->check(CLI::IsMember({"heatmap", "sweep-curves", "scatter"}));
  figure->add_option("--input", figure_args.inputs, "Metrics tables or payoff reports")
      ->required();
  figure->add_option("--x", figure_args.x, "Swept key on the x axis");
  figure->add_option("--y", figure_args.y, "Swept key on the y axis");
  figure->add_option("--out", figure_args.out, "Output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (*replay && !*log_opt && !*ckpt_opt) {
    err << "replay needs --log or --checkpoints\n";
    return kExitUsage;
  }

  try {
    if (*train) return Train(config, train_seed, out, err);
    if (*sweep) return Sweep(config, parallelism, out, err);
    if (*egta) return Egta(egta_args, out, err);
    if (*classify) return Classify(r, p, s, t, out);
    if (*replay) return Replay(replay_args, out);
    if (*validate) return ValidateConfig(validate_path, out);
    if (*figure) return Figure(figure_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MapError& e) {
    err << "map error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IncompatibleLog& e) {
    err << "incompatible log: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SchemaMismatch& e) {
    err << "schema mismatch: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidThresholds& e) {
    err << "invalid thresholds: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace ssdlab
