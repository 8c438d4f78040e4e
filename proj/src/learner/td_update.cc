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

#include "ssdlab/learner/td_update.h"

#include <fmt/core.h>

namespace ssdlab {

void LearnerConfig::Validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument(fmt::format("gamma must lie in [0,1], got {}", gamma));
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (minibatch_size < 1) throw std::invalid_argument("minibatch_size must be >= 1");
  if (updates_per_step < 0) throw std::invalid_argument("updates_per_step must be >= 0");
  if (learning_starts < minibatch_size) {
    throw std::invalid_argument("learning_starts must be >= minibatch_size");
  }
  if (use_target_network && target_sync_interval < 1) {
    throw std::invalid_argument("target_sync_interval must be >= 1");
  }
}

TransitionBatch TransitionBatch::FromTransitions(
    std::span<const Transition* const> sample) {
  const Eigen::Index n = static_cast<Eigen::Index>(sample.size());
  TransitionBatch batch;
  batch.states.resize(kObsSize, n);
  batch.next_states.resize(kObsSize, n);
  batch.rewards.resize(n);
  batch.actions.resize(n);
  batch.terminal.resize(n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const Transition& t = *sample[b];
    t.obs.WriteTensor({batch.states.col(b).data(), kObsSize});
    t.next_obs.WriteTensor({batch.next_states.col(b).data(), kObsSize});
    batch.actions[b] = static_cast<int>(t.action);
    batch.rewards(b) = t.reward;
    batch.terminal[b] = t.terminal;
  }
  return batch;
}

Eigen::VectorXd BootstrapTargets(const QNetwork& bootstrap,
                                 const TransitionBatch& batch, double gamma) {
  Eigen::VectorXd targets = batch.rewards;
  bool any_bootstrap = false;
  for (uint8_t t : batch.terminal) any_bootstrap |= !t;
  if (!any_bootstrap) return targets;
  const Eigen::MatrixXd next_q = bootstrap.ForwardBatch(batch.next_states);
  for (Eigen::Index b = 0; b < batch.size(); ++b) {
    if (!batch.terminal[b]) targets(b) += gamma * next_q.col(b).maxCoeff();
  }
  return targets;
}

double BellmanLoss(const QNetwork& net, const TransitionBatch& batch,
                   const Eigen::VectorXd& targets) {
  const Eigen::MatrixXd q = net.ForwardBatch(batch.states);
  double sum = 0.0;
  for (Eigen::Index b = 0; b < batch.size(); ++b) {
    const double residual = targets(b) - q(batch.actions[b], b);
    sum += residual * residual;
  }
  return sum / static_cast<double>(batch.size());
}

double BellmanLossAndGradient(const QNetwork& net, const TransitionBatch& batch,
                              const Eigen::VectorXd& targets, Gradients* grad) {
  const Eigen::Index n = batch.size();
  if (n == 0) throw EmptyBatch();
  QNetwork::Trace trace;
  const Eigen::MatrixXd q = net.ForwardBatch(batch.states, &trace);

  // dL/dQ is nonzero only at the taken action of each sample.
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(kNumActions, n);
  double sum = 0.0;
  for (Eigen::Index b = 0; b < n; ++b) {
    const double residual = q(batch.actions[b], b) - targets(b);
    sum += residual * residual;
    delta(batch.actions[b], b) = 2.0 * residual / static_cast<double>(n);
  }

  const int layers = net.num_layers();
  grad->weights.resize(layers);
  grad->biases.resize(layers);
  for (int l = layers - 1; l >= 0; --l) {
    if (net.with_bias()) {
      grad->biases[l] = delta.rowwise().sum();
    } else {
      grad->biases[l] = Eigen::VectorXd::Zero(net.bias(l).size());
    }
    const Eigen::MatrixXd& input = trace.activations[l];
    if (l == 0) {
      Eigen::MatrixXd& gw = grad->weights[0];
      gw.setZero(net.weights(0).rows(), net.weights(0).cols());
      for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index j = 0; j < input.rows(); ++j) {
          const double x = input(j, b);
          if (x != 0.0) gw.col(j).noalias() += delta.col(b) * x;
        }
      }
    } else {
      grad->weights[l].noalias() = delta * input.transpose();
      Eigen::MatrixXd back = net.weights(l).transpose() * delta;
      const Eigen::MatrixXd& z = trace.pre_activations[l - 1];
      delta = (back.array() * (z.array() > 0.0).cast<double>()).matrix();
    }
  }
  return sum / static_cast<double>(n);
}

void ApplySgd(QNetwork& net, const Gradients& grad, double learning_rate) {
  for (int l = 0; l < net.num_layers(); ++l) {
    net.weights(l).noalias() -= learning_rate * grad.weights[l];
    if (net.with_bias()) net.bias(l).noalias() -= learning_rate * grad.biases[l];
  }
}

double TdUpdate(QNetwork& net, const TransitionBatch& batch,
                const LearnerConfig& cfg, const QNetwork* target_net) {
  if (batch.size() == 0) throw EmptyBatch();
  const QNetwork& bootstrap = target_net ? *target_net : net;
  const Eigen::VectorXd targets = BootstrapTargets(bootstrap, batch, cfg.gamma);
  Gradients grad;
  const double loss = BellmanLossAndGradient(net, batch, targets, &grad);
  ApplySgd(net, grad, cfg.learning_rate);
  return loss;
}

double TdUpdate(QNetwork& net, std::span<const Transition* const> sample,
                const LearnerConfig& cfg, const QNetwork* target_net) {
  if (sample.empty()) throw EmptyBatch();
  return TdUpdate(net, TransitionBatch::FromTransitions(sample), cfg, target_net);
}

}  // namespace ssdlab
