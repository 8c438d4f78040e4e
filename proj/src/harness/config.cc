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

#include "ssdlab/harness/config.h"

#include <fmt/core.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace ssdlab {
namespace {

namespace fs = std::filesystem;

const std::set<std::string>& TopLevelKeys() {
  static const std::set<std::string> keys = {
      "game",          "map",          "episode_length", "total_steps",
      "seed",          "eval_interval", "eval_episodes", "eval_epsilon",
      "metrics_path",  "checkpoint_dir", "checkpoint_interval"};
  return keys;
}

const std::set<std::string>& AgentKeys() {
  static const std::set<std::string> keys = {
      "hidden",          "gamma",          "learning_rate",
      "minibatch_size",  "updates_per_step", "learning_starts",
      "use_target_network", "target_sync_interval", "epsilon_start",
      "epsilon_end",     "epsilon_decay_steps", "buffer_capacity"};
  return keys;
}

bool IsExperimentKey(const std::string& key) {
  const size_t dot = key.find('.');
  if (dot == std::string::npos) return TopLevelKeys().count(key) > 0;
  const std::string section = key.substr(0, dot);
  const std::string name = key.substr(dot + 1);
  if (section == "gathering") return name == "n_apple" || name == "n_tagged";
  if (section == "wolfpack") {
    return name == "capture_radius" || name == "r_lone" || name == "r_team";
  }
  if (section == "agent" || section == "agent1" || section == "agent2") {
    return AgentKeys().count(name) > 0;
  }
  return false;
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T ParseInteger(const std::string& key, const std::string& value) {
  T out{};
  const std::string v = Trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, value));
  }
  return out;
}

double ParseReal(const std::string& key, const std::string& value) {
  const std::string v = Trim(value);
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, value));
  }
  return out;
}

bool ParseFlag(const std::string& key, const std::string& value) {
  const std::string v = Trim(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, value));
}

// "32,32" or "32x32".
std::vector<int> ParseWidths(const std::string& key, std::string value) {
  std::replace(value.begin(), value.end(), 'x', ',');
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int w = ParseInteger<int>(key, item);
    if (w < 1) throw ConfigError(fmt::format("{}: widths must be positive", key));
    out.push_back(w);
  }
  if (out.empty()) throw ConfigError(fmt::format("{}: empty width list", key));
  return out;
}

void ApplyAgentKey(QAgentConfig& a, const std::string& name,
                   const std::string& key, const std::string& value) {
  LearnerConfig& l = a.learner;
  if (name == "hidden") a.hidden = ParseWidths(key, value);
  else if (name == "gamma") l.gamma = ParseReal(key, value);
  else if (name == "learning_rate") l.learning_rate = ParseReal(key, value);
  else if (name == "minibatch_size") l.minibatch_size = ParseInteger<int>(key, value);
  else if (name == "updates_per_step") l.updates_per_step = ParseInteger<int>(key, value);
  else if (name == "learning_starts") l.learning_starts = ParseInteger<int>(key, value);
  else if (name == "use_target_network") l.use_target_network = ParseFlag(key, value);
  else if (name == "target_sync_interval") l.target_sync_interval = ParseInteger<int>(key, value);
  else if (name == "epsilon_start") a.epsilon.start = ParseReal(key, value);
  else if (name == "epsilon_end") a.epsilon.end = ParseReal(key, value);
  else if (name == "epsilon_decay_steps") a.epsilon.decay_steps = ParseInteger<long>(key, value);
  else if (name == "buffer_capacity") a.buffer_capacity = ParseInteger<size_t>(key, value);
}

fs::path Resolve(const fs::path& base_dir, const std::string& value) {
  fs::path p(Trim(value));
  return p.is_absolute() ? p : base_dir / p;
}

}  // namespace

RawConfig ParseRawConfig(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }
  RawConfig raw;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      raw[name] = node.data();
      continue;
    }
    for (const auto& [key, leaf] : node) raw[name + "." + key] = leaf.data();
  }
  return raw;
}

RawConfig LoadRawConfig(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read config {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseRawConfig(ss.str());
}

ExperimentConfig BuildExperimentConfig(const RawConfig& raw,
                                       const fs::path& base_dir) {
  for (const auto& [key, value] : raw) {
    if (key.rfind("sweep.", 0) == 0) continue;
    if (!IsExperimentKey(key)) throw ConfigError(fmt::format("unknown key '{}'", key));
  }
  auto required = [&](const std::string& key) -> const std::string& {
    auto it = raw.find(key);
    if (it == raw.end()) throw ConfigError(fmt::format("missing required key '{}'", key));
    return it->second;
  };
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };

  ExperimentConfig cfg;
  const std::string game = Trim(required("game"));
  if (game == "gathering") {
    cfg.game.game = GameKind::kGathering;
  } else if (game == "wolfpack") {
    cfg.game.game = GameKind::kWolfpack;
  } else {
    throw ConfigError(fmt::format("game: expected gathering or wolfpack, got '{}'", game));
  }
  cfg.total_steps = ParseInteger<int64_t>("total_steps", required("total_steps"));
  if (cfg.total_steps < 1) throw ConfigError("total_steps must be >= 1");
  cfg.seed = ParseInteger<uint64_t>("seed", required("seed"));
  if (auto* v = get("episode_length")) cfg.game.episode_length = ParseInteger<int>("episode_length", *v);
  if (cfg.game.episode_length < 1) throw ConfigError("episode_length must be >= 1");
  if (auto* v = get("eval_interval")) cfg.eval_interval = ParseInteger<int64_t>("eval_interval", *v);
  if (auto* v = get("eval_episodes")) cfg.eval_episodes = ParseInteger<int>("eval_episodes", *v);
  if (auto* v = get("eval_epsilon")) cfg.eval_epsilon = ParseReal("eval_epsilon", *v);
  if (auto* v = get("checkpoint_interval")) {
    cfg.checkpoint_interval = ParseInteger<int64_t>("checkpoint_interval", *v);
  }
  if (cfg.eval_interval < 0 || cfg.checkpoint_interval < 0) {
    throw ConfigError("intervals must be >= 0");
  }
  if (cfg.eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  if (!(cfg.eval_epsilon >= 0.0 && cfg.eval_epsilon <= 1.0)) {
    throw ConfigError("eval_epsilon must lie in [0,1]");
  }
  if (auto* v = get("metrics_path")) cfg.metrics_path = Resolve(base_dir, *v);
  if (auto* v = get("checkpoint_dir")) cfg.checkpoint_dir = Resolve(base_dir, *v);

  GatheringParams& g = cfg.game.gathering;
  if (auto* v = get("gathering.n_apple")) g.n_apple = ParseInteger<int>("gathering.n_apple", *v);
  if (auto* v = get("gathering.n_tagged")) g.n_tagged = ParseInteger<int>("gathering.n_tagged", *v);
  WolfpackParams& w = cfg.game.wolfpack;
  if (auto* v = get("wolfpack.capture_radius")) {
    w.capture_radius = ParseInteger<int>("wolfpack.capture_radius", *v);
  }
  if (auto* v = get("wolfpack.r_lone")) w.r_lone = ParseReal("wolfpack.r_lone", *v);
  if (auto* v = get("wolfpack.r_team")) w.r_team = ParseReal("wolfpack.r_team", *v);
  try {
    g.Validate();
    w.Validate();
  } catch (const ParamError& e) {
    throw ConfigError(e.what());
  }

  for (QAgentConfig& a : cfg.agents) {
    a.epsilon.decay_steps = std::max<int64_t>(1, cfg.total_steps / 2);
  }
  for (const char* section : {"agent", "agent1", "agent2"}) {
    const std::string prefix = std::string(section) + ".";
    for (const auto& [key, value] : raw) {
      if (key.rfind(prefix, 0) != 0) continue;
      const std::string name = key.substr(prefix.size());
      for (int i = 0; i < 2; ++i) {
        if (std::string(section) == "agent" || section[5] - '1' == i) {
          ApplyAgentKey(cfg.agents[i], name, key, value);
        }
      }
    }
  }
  for (const QAgentConfig& a : cfg.agents) {
    try {
      a.learner.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!(a.epsilon.start >= 0 && a.epsilon.start <= 1 && a.epsilon.end >= 0 &&
          a.epsilon.end <= a.epsilon.start)) {
      throw ConfigError("epsilon schedule must satisfy 0 <= end <= start <= 1");
    }
    if (a.epsilon.decay_steps < 1) throw ConfigError("epsilon_decay_steps must be >= 1");
    if (a.buffer_capacity < static_cast<size_t>(a.learner.minibatch_size)) {
      throw ConfigError("buffer_capacity must be >= minibatch_size");
    }
  }

  cfg.map_path = Resolve(base_dir, required("map"));
  try {
    cfg.game.map = std::make_shared<const GridMap>(LoadMapFile(cfg.map_path));
    cfg.game.map->ValidateFor(cfg.game.game);
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("map {}: {}", cfg.map_path.string(), e.what()));
  }
  return cfg;
}

ExperimentConfig LoadExperimentConfig(const fs::path& path) {
  return BuildExperimentConfig(LoadRawConfig(path), path.parent_path());
}

std::vector<SweepCell> SweepSpec::Cells() const {
  std::vector<SweepCell> cells;
  size_t total = 1;
  for (const SweepAxis& a : axes) total *= a.values.size();
  for (size_t n = 0; n < total; ++n) {
    SweepCell cell;
    cell.index = static_cast<int>(n);
    size_t rest = n;
    std::vector<size_t> pick(axes.size());
    for (size_t k = axes.size(); k-- > 0;) {
      pick[k] = rest % axes[k].values.size();
      rest /= axes[k].values.size();
    }
    for (size_t k = 0; k < axes.size(); ++k) {
      const std::string& v = axes[k].values[pick[k]];
      cell.overrides[axes[k].key] = v;
      if (k > 0) cell.id += ";";
      cell.id += axes[k].key + "=" + v;
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

RawConfig SweepSpec::CellConfig(const SweepCell& cell) const {
  RawConfig raw = base;
  for (const auto& [key, value] : cell.overrides) raw[key] = value;
  return raw;
}

SweepSpec BuildSweepSpec(const RawConfig& raw, const fs::path& base_dir) {
  SweepSpec spec;
  spec.base_dir = base_dir;
  for (const auto& [key, value] : raw) {
    if (key.rfind("sweep.", 0) != 0) {
      spec.base[key] = value;
      continue;
    }
    const std::string name = key.substr(6);
    if (name == "seeds_per_cell") {
      spec.seeds_per_cell = ParseInteger<int>(key, value);
      if (spec.seeds_per_cell < 1) throw ConfigError("seeds_per_cell must be >= 1");
      continue;
    }
    if (!IsExperimentKey(name)) {
      throw ConfigError(fmt::format("sweep axis '{}' is not a config key", name));
    }
    SweepAxis axis{name, {}};
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, '|')) {
      item = Trim(item);
      if (item.empty()) throw ConfigError(fmt::format("{}: empty axis value", key));
      if (item.find_first_of(",;=") != std::string::npos) {
        throw ConfigError(fmt::format(
            "{}: axis value '{}' may not contain ',', ';' or '=' (write widths as 32x32)",
            key, item));
      }
      axis.values.push_back(item);
    }
    if (axis.values.empty()) throw ConfigError(fmt::format("{}: no values", key));
    spec.axes.push_back(std::move(axis));
  }
  return spec;
}

SweepSpec LoadSweepSpec(const fs::path& path) {
  return BuildSweepSpec(LoadRawConfig(path), path.parent_path());
}

}  // namespace ssdlab
