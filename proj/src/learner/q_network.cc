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

#include "ssdlab/learner/q_network.h"

#include <cmath>

#include <fmt/core.h>

namespace ssdlab {

QNetwork::QNetwork(std::vector<int> layer_dims, bool with_bias)
    : layer_dims_(std::move(layer_dims)), with_bias_(with_bias) {
  if (layer_dims_.size() < 2) {
    throw ShapeMismatch("a network needs at least an input and output layer");
  }
  if (layer_dims_.back() != kNumActions) {
    throw ShapeMismatch(fmt::format("output layer must have {} units, got {}",
                                    kNumActions, layer_dims_.back()));
  }
  for (int d : layer_dims_) {
    if (d <= 0) throw ShapeMismatch("layer widths must be positive");
  }
  for (size_t l = 0; l + 1 < layer_dims_.size(); ++l) {
    weights_.push_back(Eigen::MatrixXd::Zero(layer_dims_[l + 1], layer_dims_[l]));
    biases_.push_back(Eigen::VectorXd::Zero(layer_dims_[l + 1]));
  }
}

QNetwork QNetwork::Random(std::vector<int> layer_dims, Rng& rng,
                          bool with_bias) {
  QNetwork net(std::move(layer_dims), with_bias);
  for (int l = 0; l < net.num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(net.layer_dims_[l]));
    Eigen::MatrixXd& w = net.weights_[l];
    // Row-major fill order so the draw sequence matches the checkpoint layout.
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.Uniform(-bound, bound);
    }
    if (with_bias) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        net.biases_[l](r) = rng.Uniform(-bound, bound);
      }
    }
  }
  return net;
}

std::vector<int> QNetwork::ObservationLayout(std::span<const int> hidden) {
  std::vector<int> dims{kObsSize};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(kNumActions);
  return dims;
}

size_t QNetwork::num_parameters() const {
  size_t n = 0;
  for (int l = 0; l < num_layers(); ++l) {
    n += weights_[l].size() + (with_bias_ ? biases_[l].size() : 0);
  }
  return n;
}

ActionValues QNetwork::FinishForward(Eigen::VectorXd h) const {
  for (int l = 1; l < num_layers(); ++l) {
    h = h.cwiseMax(0.0);
    h = weights_[l] * h + biases_[l];
  }
  ActionValues out;
  for (int a = 0; a < kNumActions; ++a) out[a] = h(a);
  return out;
}

ActionValues QNetwork::Forward(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != input_size()) {
    throw ShapeMismatch(fmt::format("input has {} values, network expects {}",
                                    input.size(), input_size()));
  }
  Eigen::VectorXd h = biases_[0];
  for (int j = 0; j < input_size(); ++j) {
    if (input[j] != 0.0) h.noalias() += weights_[0].col(j) * input[j];
  }
  return FinishForward(std::move(h));
}

ActionValues QNetwork::Forward(const Observation& obs) const {
  if (input_size() != kObsSize) {
    throw ShapeMismatch(fmt::format("observation has {} values, network expects {}",
                                    kObsSize, input_size()));
  }
  Eigen::VectorXd h = biases_[0];
  const auto& codes = obs.codes();
  for (int i = 0; i < kObsCells; ++i) {
    if (codes[i] == Palette::kBackground) continue;
    const Rgb& rgb = kPaletteColors[static_cast<int>(codes[i])];
    const float channel[3] = {rgb.r, rgb.g, rgb.b};
    for (int ch = 0; ch < kObsChannels; ++ch) {
      if (channel[ch] != 0.0f) {
        h.noalias() += weights_[0].col(ch * kObsCells + i) * double{channel[ch]};
      }
    }
  }
  return FinishForward(std::move(h));
}

Eigen::MatrixXd QNetwork::ForwardBatch(const Eigen::MatrixXd& inputs) const {
  return ForwardBatch(inputs, nullptr);
}

Eigen::MatrixXd QNetwork::ForwardBatch(const Eigen::MatrixXd& inputs,
                                       Trace* trace) const {
  if (inputs.rows() != input_size()) {
    throw ShapeMismatch(fmt::format("batch rows {} != network input {}",
                                    inputs.rows(), input_size()));
  }
  const Eigen::Index batch = inputs.cols();
  Eigen::MatrixXd z = biases_[0].replicate(1, batch);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int j = 0; j < input_size(); ++j) {
      const double x = inputs(j, b);
      if (x != 0.0) z.col(b).noalias() += weights_[0].col(j) * x;
    }
  }
  if (trace) {
    trace->pre_activations.clear();
    trace->activations.clear();
    trace->activations.push_back(inputs);
  }
  for (int l = 1; l < num_layers(); ++l) {
    Eigen::MatrixXd a = z.cwiseMax(0.0);
    if (trace) trace->pre_activations.push_back(std::move(z));
    z = weights_[l] * a;
    z.colwise() += biases_[l];
    if (trace) trace->activations.push_back(std::move(a));
  }
  if (trace) trace->pre_activations.push_back(z);
  return z;
}

bool operator==(const QNetwork& a, const QNetwork& b) {
  if (a.layer_dims_ != b.layer_dims_ || a.with_bias_ != b.with_bias_) return false;
  for (int l = 0; l < a.num_layers(); ++l) {
    if (a.weights_[l] != b.weights_[l] || a.biases_[l] != b.biases_[l]) return false;
  }
  return true;
}

int ArgMax(const ActionValues& values) {
  int best = 0;
  for (int a = 1; a < kNumActions; ++a) {
    if (values[a] > values[best]) best = a;
  }
  return best;
}

Action EpsilonGreedy(const QNetwork& net, const Observation& obs,
                     double epsilon, Rng& rng) {
  if (rng.Uniform01() < epsilon) {
    return static_cast<Action>(rng.UniformInt(kNumActions));
  }
  return static_cast<Action>(ArgMax(net.Forward(obs)));
}

}  // namespace ssdlab
