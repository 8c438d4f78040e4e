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

#include "ssdlab/learner/replay_buffer.h"

#include <algorithm>
#include <stdexcept>

namespace ssdlab {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayBuffer::Store(Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
    return;
  }
  storage_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(size_t i) const {
  if (i >= storage_.size()) throw std::out_of_range("replay index out of range");
  return storage_[(head_ + i) % storage_.size()];
}

std::vector<const Transition*> ReplayBuffer::Sample(size_t n, Rng& rng) const {
  if (storage_.empty()) throw std::logic_error("sampling an empty replay buffer");
  std::vector<const Transition*> out(n);
  for (size_t k = 0; k < n; ++k) out[k] = &storage_[rng.UniformInt(storage_.size())];
  return out;
}

double EpsilonSchedule::At(long step) const {
  if (decay_steps <= 0 || step >= decay_steps) return end;
  const double frac = static_cast<double>(step) / static_cast<double>(decay_steps);
  return std::max(end, start - (start - end) * frac);
}

}  // namespace ssdlab
