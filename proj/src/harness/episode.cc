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

#include "ssdlab/harness/episode.h"

#include <fmt/core.h>

namespace ssdlab {

EpisodeLog RunEpisode(Environment& env, std::span<Policy* const> agents,
                      Mode mode, Rng& rng, const EpisodeOptions& opts) {
  if (agents.size() != 2) {
    throw std::invalid_argument(
        fmt::format("expected 2 agents, got {}", agents.size()));
  }
  env.Reset(opts.env_seed);
  std::array<QAgent*, 2> learners = {nullptr, nullptr};
  std::array<double, 2> gamma = {0.99, 0.99};
  for (int i = 0; i < 2; ++i) {
    agents[i]->Reset();
    learners[i] = mode == Mode::kTrain ? dynamic_cast<QAgent*>(agents[i]) : nullptr;
    if (auto* q = dynamic_cast<QAgent*>(agents[i])) gamma[i] = q->gamma();
  }

  const int frames = opts.frames > 0 ? opts.frames : env.episode_length();
  EpisodeLog log;
  log.frames.reserve(frames);
  std::array<Observation, 2> obs = {env.Observe(0), env.Observe(1)};
  for (int t = 0; t < frames; ++t) {
    std::array<Action, 2> joint;
    for (int i = 0; i < 2; ++i) {
      if (learners[i]) {
        joint[i] = learners[i]->ActForTraining(obs[i]);
      } else {
        joint[i] = agents[i]->Act(
            obs[i], mode == Mode::kEval ? opts.eval_epsilon : 0.0, rng);
      }
    }
    FrameRecord frame;
    frame.active = {env.state().entities[0].active,
                    env.state().entities[1].active};
    StepResult r = env.Step(joint);
    frame.actions = {joint[0], joint[1]};
    if (env.config().game == GameKind::kWolfpack) {
      frame.actions.push_back(r.prey_action);
    }
    frame.rewards = r.rewards;
    frame.events = std::move(r.events);

    std::array<Observation, 2> next = {env.Observe(0), env.Observe(1)};
    const bool terminal = t + 1 == frames;
    for (int i = 0; i < 2; ++i) {
      if (!learners[i]) continue;
      std::optional<double> loss = learners[i]->Observe(
          {obs[i], joint[i], frame.rewards[i], next[i], terminal});
      if (loss && opts.losses) {
        opts.losses->sum[i] += *loss;
        ++opts.losses->updates[i];
      }
    }
    log.Append(std::move(frame), gamma);
    obs = std::move(next);
    if (opts.after_frame) opts.after_frame(t + 1);
  }
  return log;
}

}  // namespace ssdlab
