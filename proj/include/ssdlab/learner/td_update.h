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

#ifndef SSDLAB_LEARNER_TD_UPDATE_H_
#define SSDLAB_LEARNER_TD_UPDATE_H_

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssdlab/learner/q_network.h"

namespace ssdlab {

struct Transition {
  Observation obs;
  Action action = Action::kStandStill;
  double reward = 0.0;
  Observation next_obs;
  // Set on the last transition of an episode only.
  bool terminal = false;
};

struct LearnerConfig {
  double gamma = 0.99;
  double learning_rate = 1e-3;
  int minibatch_size = 32;
  int updates_per_step = 1;
  // Updates start once the replay buffer holds this many transitions.
  int learning_starts = 1000;
  bool use_target_network = false;
  int target_sync_interval = 1000;

  void Validate() const;
};

class EmptyBatch : public std::invalid_argument {
 public:
  EmptyBatch() : std::invalid_argument("td update on an empty batch") {}
};

// Raised when an update produces a non-finite loss, e.g. when the learning
// rate is too large for the reward scale and the values blow up.
class TrainingDiverged : public std::runtime_error {
 public:
  explicit TrainingDiverged(long update)
      : std::runtime_error("training diverged: non-finite loss at update " +
                           std::to_string(update)) {}
};

// Dense feature-space view of a sample of transitions, one column each.
struct TransitionBatch {
  Eigen::MatrixXd states;
  std::vector<int> actions;
  Eigen::VectorXd rewards;
  Eigen::MatrixXd next_states;
  std::vector<uint8_t> terminal;

  Eigen::Index size() const { return states.cols(); }
  static TransitionBatch FromTransitions(std::span<const Transition* const> sample);
};

// Same shapes as the network's parameters.
struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

// r for terminal transitions, else r + gamma * max_a' Q(s', a') evaluated on
// `bootstrap`.
Eigen::VectorXd BootstrapTargets(const QNetwork& bootstrap,
                                 const TransitionBatch& batch, double gamma);

// Mean over the batch of (target - Q(s, a))^2 with targets held fixed.
double BellmanLoss(const QNetwork& net, const TransitionBatch& batch,
                   const Eigen::VectorXd& targets);

// Loss as above plus its exact gradient with respect to every parameter.
double BellmanLossAndGradient(const QNetwork& net, const TransitionBatch& batch,
                              const Eigen::VectorXd& targets, Gradients* grad);

void ApplySgd(QNetwork& net, const Gradients& grad, double learning_rate);

// One gradient-descent step on the mean squared Bellman residual. The
// bootstrap max is taken on `target_net` when given (frozen copy), else on
// `net` itself; either way no gradient flows through the target. Returns the
// loss before the step.
double TdUpdate(QNetwork& net, const TransitionBatch& batch,
                const LearnerConfig& cfg, const QNetwork* target_net = nullptr);
double TdUpdate(QNetwork& net, std::span<const Transition* const> sample,
                const LearnerConfig& cfg, const QNetwork* target_net = nullptr);

}  // namespace ssdlab

#endif  // SSDLAB_LEARNER_TD_UPDATE_H_
