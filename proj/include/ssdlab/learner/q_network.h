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

#ifndef SSDLAB_LEARNER_Q_NETWORK_H_
#define SSDLAB_LEARNER_Q_NETWORK_H_

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ssdlab/engine/observation.h"
#include "ssdlab/rng.h"

namespace ssdlab {

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ActionValues = std::array<double, kNumActions>;

// Feedforward action-value network: affine layers with ReLU between them
// and an identity output layer of kNumActions units. layer_dims lists the
// input width, any hidden widths, then kNumActions.
//
// The first layer skips zero inputs, which dominate rendered observations.
class QNetwork {
 public:
  // All weights and biases zero.
  explicit QNetwork(std::vector<int> layer_dims, bool with_bias = true);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) initialization.
  static QNetwork Random(std::vector<int> layer_dims, Rng& rng,
                         bool with_bias = true);

  // Default observation network: 1008 -> hidden... -> 8.
  static std::vector<int> ObservationLayout(std::span<const int> hidden);

  const std::vector<int>& layer_dims() const { return layer_dims_; }
  int input_size() const { return layer_dims_.front(); }
  int num_layers() const { return static_cast<int>(weights_.size()); }
  bool with_bias() const { return with_bias_; }
  size_t num_parameters() const;

  // weights(l) is layer_dims[l+1] x layer_dims[l]; bias(l) has
  // layer_dims[l+1] entries (kept at zero when !with_bias).
  Eigen::MatrixXd& weights(int l) { return weights_[l]; }
  const Eigen::MatrixXd& weights(int l) const { return weights_[l]; }
  Eigen::VectorXd& bias(int l) { return biases_[l]; }
  const Eigen::VectorXd& bias(int l) const { return biases_[l]; }

  ActionValues Forward(std::span<const double> input) const;
  ActionValues Forward(const Observation& obs) const;

  // Column-per-sample batch forward. Returns kNumActions x B.
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& inputs) const;

  // Batch forward keeping every layer's pre-activation (z) and output
  // activation, for backpropagation. activations[0] is the input itself.
  struct Trace {
    std::vector<Eigen::MatrixXd> pre_activations;
    std::vector<Eigen::MatrixXd> activations;
  };
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& inputs,
                               Trace* trace) const;

  friend bool operator==(const QNetwork& a, const QNetwork& b);

 private:
  ActionValues FinishForward(Eigen::VectorXd h) const;

  std::vector<int> layer_dims_;
  bool with_bias_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

// Index of the largest value; the lowest index wins ties.
int ArgMax(const ActionValues& values);

// With probability 1 - epsilon the greedy action, otherwise a uniform draw
// over all actions. Always consumes one uniform variate from `rng`.
Action EpsilonGreedy(const QNetwork& net, const Observation& obs,
                     double epsilon, Rng& rng);

}  // namespace ssdlab

#endif  // SSDLAB_LEARNER_Q_NETWORK_H_
