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

#ifndef SSDLAB_LEARNER_CHECKPOINT_H_
#define SSDLAB_LEARNER_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "ssdlab/learner/q_network.h"

namespace ssdlab {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { kCorrupt, kVersionMismatch, kIo };

  CheckpointError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Checkpoint {
  QNetwork net;
  int64_t training_step = 0;
};

// Text document: a version header, the layer layout, the training step, then
// every layer's weights (row-major) and biases as hexadecimal floating point
// literals, so a save/load round trip is bit-exact.
std::string SerializeCheckpoint(const QNetwork& net, int64_t training_step);
Checkpoint ParseCheckpoint(const std::string& text);

void SavePolicy(const QNetwork& net, int64_t training_step,
                const std::filesystem::path& path);
Checkpoint LoadPolicy(const std::filesystem::path& path);

}  // namespace ssdlab

#endif  // SSDLAB_LEARNER_CHECKPOINT_H_
