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

#include "ssdlab/learner/agent.h"

#include <cmath>

namespace ssdlab {

namespace {

QNetwork InitialNetwork(const QAgentConfig& cfg, uint64_t init_seed) {
  Rng rng(init_seed);
  return QNetwork::Random(QNetwork::ObservationLayout(cfg.hidden), rng);
}

}  // namespace

QAgent::QAgent(QAgentConfig cfg, uint64_t init_seed, uint64_t stream_seed)
    : QAgent(cfg, InitialNetwork(cfg, init_seed), stream_seed) {}

QAgent::QAgent(QAgentConfig cfg, QNetwork net, uint64_t stream_seed)
    : cfg_(std::move(cfg)),
      net_(std::move(net)),
      buffer_(cfg_.buffer_capacity),
      rng_(stream_seed) {
  cfg_.learner.Validate();
  if (cfg_.learner.use_target_network) target_ = net_;
}

Action QAgent::ActForTraining(const Observation& obs) {
  return EpsilonGreedy(net_, obs, current_epsilon(), rng_);
}

std::optional<double> QAgent::Observe(Transition t) {
  buffer_.Store(std::move(t));
  ++training_step_;
  const LearnerConfig& lc = cfg_.learner;
  if (buffer_.size() < static_cast<size_t>(lc.learning_starts) ||
      lc.updates_per_step == 0) {
    return std::nullopt;
  }
  double loss = 0.0;
  for (int u = 0; u < lc.updates_per_step; ++u) {
    const std::vector<const Transition*> sample =
        buffer_.Sample(static_cast<size_t>(lc.minibatch_size), rng_);
    const double l = TdUpdate(net_, sample, lc, target_ ? &*target_ : nullptr);
    ++updates_;
    if (!std::isfinite(l)) throw TrainingDiverged(updates_);
    loss += l;
    if (target_ && updates_ % lc.target_sync_interval == 0) *target_ = net_;
  }
  return loss / lc.updates_per_step;
}

}  // namespace ssdlab
