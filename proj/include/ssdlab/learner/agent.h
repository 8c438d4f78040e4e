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

#ifndef SSDLAB_LEARNER_AGENT_H_
#define SSDLAB_LEARNER_AGENT_H_

#include <memory>
#include <optional>
#include <vector>

#include "ssdlab/learner/q_network.h"
#include "ssdlab/learner/replay_buffer.h"
#include "ssdlab/learner/td_update.h"

namespace ssdlab {

// Anything that can pick an action from an observation. `epsilon` is the
// exploration rate requested by the caller; scripted policies ignore it.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action Act(const Observation& obs, double epsilon, Rng& rng) = 0;
  // Called at the start of every episode.
  virtual void Reset() {}
};

// Always the same action.
class FixedActionPolicy : public Policy {
 public:
  explicit FixedActionPolicy(Action action) : action_(action) {}
  Action Act(const Observation&, double, Rng&) override { return action_; }

 private:
  Action action_;
};

// Plays a fixed open-loop action sequence, repeating it cyclically.
class SequencePolicy : public Policy {
 public:
  explicit SequencePolicy(std::vector<Action> actions)
      : actions_(std::move(actions)) {}
  Action Act(const Observation&, double, Rng&) override {
    const Action a = actions_[cursor_ % actions_.size()];
    ++cursor_;
    return a;
  }
  void Reset() override { cursor_ = 0; }

 private:
  std::vector<Action> actions_;
  size_t cursor_ = 0;
};

// Epsilon-greedy over a frozen network.
class GreedyPolicy : public Policy {
 public:
  explicit GreedyPolicy(QNetwork net) : net_(std::move(net)) {}
  Action Act(const Observation& obs, double epsilon, Rng& rng) override {
    return EpsilonGreedy(net_, obs, epsilon, rng);
  }
  const QNetwork& net() const { return net_; }

 private:
  QNetwork net_;
};

struct QAgentConfig {
  std::vector<int> hidden = {32, 32};
  LearnerConfig learner;
  EpsilonSchedule epsilon;
  size_t buffer_capacity = 100000;
};

// Independent Q-learner. It owns its network, replay buffer and random
// stream; nothing here is shared with any other agent.
class QAgent : public Policy {
 public:
  // `init_seed` seeds the weights, `stream_seed` the exploration and
  // minibatch sampling stream.
  QAgent(QAgentConfig cfg, uint64_t init_seed, uint64_t stream_seed);
  // Resumes from an existing network.
  QAgent(QAgentConfig cfg, QNetwork net, uint64_t stream_seed);

  // Evaluation-style action with an externally supplied stream.
  Action Act(const Observation& obs, double epsilon, Rng& rng) override {
    return EpsilonGreedy(net_, obs, epsilon, rng);
  }

  // Training action: epsilon from the schedule at the current training step,
  // drawn from the agent's own stream.
  Action ActForTraining(const Observation& obs);
  double current_epsilon() const { return cfg_.epsilon.At(training_step_); }

  // Stores the transition, advances the training step, and runs
  // updates_per_step TD updates once learning_starts transitions are stored.
  // Returns the mean pre-step loss when any update ran.
  std::optional<double> Observe(Transition t);

  const QNetwork& net() const { return net_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  const QAgentConfig& config() const { return cfg_; }
  long training_step() const { return training_step_; }
  double gamma() const { return cfg_.learner.gamma; }

 private:
  QAgentConfig cfg_;
  QNetwork net_;
  std::optional<QNetwork> target_;
  ReplayBuffer buffer_;
  Rng rng_;
  long training_step_ = 0;
  long updates_ = 0;
};

}  // namespace ssdlab

#endif  // SSDLAB_LEARNER_AGENT_H_
