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

#ifndef SSDLAB_LEARNER_REPLAY_BUFFER_H_
#define SSDLAB_LEARNER_REPLAY_BUFFER_H_

#include <cstddef>
#include <vector>

#include "ssdlab/learner/td_update.h"
#include "ssdlab/rng.h"

namespace ssdlab {

// Bounded FIFO of transitions ("growing batch"): once full, every store
// evicts the single oldest element.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity = 100000);

  void Store(Transition t);

  size_t size() const { return storage_.size(); }
  size_t capacity() const { return capacity_; }
  bool empty() const { return storage_.empty(); }

  // i = 0 is the oldest stored transition.
  const Transition& at(size_t i) const;

  // Uniform sample with replacement.
  std::vector<const Transition*> Sample(size_t n, Rng& rng) const;

 private:
  size_t capacity_;
  size_t head_ = 0;  // position of the oldest element once full
  std::vector<Transition> storage_;
};

struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.1;
  long decay_steps = 100000;

  // Linear decay from start to end over decay_steps, then flat at end.
  double At(long step) const;
};

}  // namespace ssdlab

#endif  // SSDLAB_LEARNER_REPLAY_BUFFER_H_
