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

#ifndef SSDLAB_EGTA_EGTA_H_
#define SSDLAB_EGTA_EGTA_H_

#include <array>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssdlab/harness/environment.h"
#include "ssdlab/harness/train.h"
#include "ssdlab/learner/agent.h"

namespace ssdlab {

class InvalidThresholds : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyPool : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class PolicyClass { kCooperator, kDefector, kNeither };

// metric < alpha_c: cooperator; metric > alpha_d: defector; otherwise (or
// NaN) neither.
PolicyClass ClassifyPolicy(double metric, double alpha_c, double alpha_d);

struct Thresholds {
  double alpha_c = 0.0;
  double alpha_d = 0.0;
};

// Percentiles of the finite metric values, linearly interpolated between
// order statistics. Throws EmptyPool when no value is finite.
double Percentile(std::vector<double> values, double pct);
Thresholds PercentileThresholds(const std::vector<double>& metrics,
                                double lo_pct = 25.0, double hi_pct = 75.0);

// Which side of the metric means cooperation. For beam use, low metric is
// cooperative; for wolves per capture, high metric is.
enum class MetricSense { kLowCooperates, kHighCooperates };

struct PoolMember {
  std::string name;
  double metric = 0.0;
  // Builds a fresh policy instance for one episode.
  std::function<std::unique_ptr<Policy>()> make;
};

struct PolicyPools {
  std::vector<PoolMember> cooperators;
  std::vector<PoolMember> defectors;
};

// Splits manifest entries into pools. Entries with a label keep it; the
// others are classified by `t` on the metric (mirrored for
// kHighCooperates, where metric > alpha_d cooperates and metric < alpha_c
// defects). Members load their checkpoint once and play greedily.
PolicyPools BuildPools(const std::vector<PoolEntry>& entries,
                       const Thresholds& t, MetricSense sense,
                       std::vector<PoolEntry>* labelled = nullptr);

struct CellEstimate {
  double mean = 0.0;
  double se = 0.0;
  long n = 0;
};

struct EmpiricalPayoffMatrix {
  CellEstimate R, P, S, T;
  int rounds = 0;
  bool budget_exhausted = false;

  double fear() const { return P.mean - S.mean; }
  double greed() const { return T.mean - R.mean; }
};

struct EstimateOptions {
  int episodes_per_draw = 1;
  // Stop once every cell's standard error is below this. NaN selects the
  // default: 1% of the largest absolute cell mean so far.
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  // Maximum rounds; each round plays every pairing once.
  int budget = 1000;
  double eval_epsilon = 0.05;
  uint64_t seed = 0;
};

// Repeated playouts of sampled policy pairs in the four pairings (C,C),
// (C,D), (D,C), (D,D). Mutual cooperation feeds R from both players, mutual
// defection feeds P, and in the mixed pairings the cooperator's return feeds
// S and the defector's T, pooling both seatings. A cell whose standard error
// is zero counts as converged. Returns after at least one round.
EmpiricalPayoffMatrix EstimatePayoffs(const GameConfig& game,
                                      const PolicyPools& pools,
                                      const EstimateOptions& opts = {});

struct SsdVerdict {
  // R > P; R > S; 2R > T + S; T > R or P > S.
  std::array<bool, 4> holds = {false, false, false, false};
  bool greed = false;  // T > R
  bool fear = false;   // P > S
};

SsdVerdict CheckSsdInequalities(double R, double P, double S, double T);

struct DilemmaClass {
  enum class Kind { kPrisonersDilemma, kChicken, kStagHunt, kNotSocialDilemma };
  Kind kind = Kind::kNotSocialDilemma;
  std::vector<int> failed;  // condition numbers 1..4

  std::string Name() const;
  friend bool operator==(const DilemmaClass&, const DilemmaClass&) = default;
};

DilemmaClass ClassifyMatrix(double R, double P, double S, double T);
DilemmaClass ClassifyMatrix(const EmpiricalPayoffMatrix& m);

// "cell,mean,se,n" rows for R, P, S, T, then a summary line starting with
// '#': fear, greed, class, each condition's verdict and the budget flag.
std::string FormatPayoffReport(const EmpiricalPayoffMatrix& m);
EmpiricalPayoffMatrix ParsePayoffReport(const std::string& text);

}  // namespace ssdlab

#endif  // SSDLAB_EGTA_EGTA_H_
