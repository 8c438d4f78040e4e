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

#ifndef SSDLAB_HARNESS_CONFIG_H_
#define SSDLAB_HARNESS_CONFIG_H_

#include <array>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssdlab/harness/environment.h"
#include "ssdlab/learner/agent.h"

namespace ssdlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat view of an INI document: top-level keys as "key", section keys as
// "section.key".
using RawConfig = std::map<std::string, std::string>;

RawConfig ParseRawConfig(const std::string& text);
RawConfig LoadRawConfig(const std::filesystem::path& path);

struct ExperimentConfig {
  GameConfig game;
  std::filesystem::path map_path;
  int64_t total_steps = 0;
  uint64_t seed = 0;
  std::array<QAgentConfig, 2> agents;
  // Training frames between evaluations; 0 evaluates at the end only.
  int64_t eval_interval = 0;
  int eval_episodes = 1;
  double eval_epsilon = 0.05;
  std::filesystem::path metrics_path;    // empty: not written
  std::filesystem::path checkpoint_dir;  // empty: not written
  // Training frames between checkpoints; 0 saves the final one only.
  int64_t checkpoint_interval = 0;
};

// Builds an experiment from a flat document, ignoring "sweep." keys.
// Relative paths resolve against `base_dir`. Unknown keys, missing required
// keys (game, map, total_steps, seed) and bad values are errors.
ExperimentConfig BuildExperimentConfig(const RawConfig& raw,
                                       const std::filesystem::path& base_dir);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

struct SweepAxis {
  std::string key;  // any experiment key, e.g. "gathering.n_apple"
  std::vector<std::string> values;
};

struct SweepCell {
  int index = 0;
  std::string id;  // "gathering.n_apple=2;gathering.n_tagged=5"
  RawConfig overrides;
};

// [sweep] section: seeds_per_cell, and one "section.key = v1 | v2 | ..."
// entry per axis.
struct SweepSpec {
  RawConfig base;
  std::filesystem::path base_dir;
  std::vector<SweepAxis> axes;
  int seeds_per_cell = 1;

  // Cross product over axes sorted by key, last axis fastest.
  std::vector<SweepCell> Cells() const;
  RawConfig CellConfig(const SweepCell& cell) const;
};

SweepSpec BuildSweepSpec(const RawConfig& raw,
                         const std::filesystem::path& base_dir);
SweepSpec LoadSweepSpec(const std::filesystem::path& path);

}  // namespace ssdlab

#endif  // SSDLAB_HARNESS_CONFIG_H_
