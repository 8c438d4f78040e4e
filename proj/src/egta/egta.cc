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

#include "ssdlab/egta/egta.h"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssdlab/harness/episode.h"
#include "ssdlab/learner/checkpoint.h"

namespace ssdlab {

PolicyClass ClassifyPolicy(double metric, double alpha_c, double alpha_d) {
  if (alpha_c > alpha_d) {
    throw InvalidThresholds(
        fmt::format("alpha_c {} exceeds alpha_d {}", alpha_c, alpha_d));
  }
  if (metric < alpha_c) return PolicyClass::kCooperator;
  if (metric > alpha_d) return PolicyClass::kDefector;
  return PolicyClass::kNeither;
}

double Percentile(std::vector<double> values, double pct) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) throw EmptyPool("no finite metric values");
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Thresholds PercentileThresholds(const std::vector<double>& metrics,
                                double lo_pct, double hi_pct) {
  return {Percentile(metrics, lo_pct), Percentile(metrics, hi_pct)};
}

PolicyPools BuildPools(const std::vector<PoolEntry>& entries,
                       const Thresholds& t, MetricSense sense,
                       std::vector<PoolEntry>* labelled) {
  if (t.alpha_c > t.alpha_d) {
    throw InvalidThresholds(
        fmt::format("alpha_c {} exceeds alpha_d {}", t.alpha_c, t.alpha_d));
  }
  PolicyPools pools;
  for (const PoolEntry& e : entries) {
    std::string label = e.label;
    if (label.empty()) {
      const PolicyClass c = ClassifyPolicy(e.metric, t.alpha_c, t.alpha_d);
      if (c == PolicyClass::kCooperator) {
        label = sense == MetricSense::kLowCooperates ? "C" : "D";
      } else if (c == PolicyClass::kDefector) {
        label = sense == MetricSense::kLowCooperates ? "D" : "C";
      }
    }
    if (labelled) labelled->push_back({e.checkpoint, e.metric, label});
    if (label.empty()) continue;
    auto net = std::make_shared<const QNetwork>(LoadPolicy(e.checkpoint).net);
    PoolMember m{e.checkpoint.string(), e.metric,
                 [net] { return std::make_unique<GreedyPolicy>(*net); }};
    (label == "C" ? pools.cooperators : pools.defectors).push_back(std::move(m));
  }
  return pools;
}

namespace {

// Welford running mean and variance.
struct Accumulator {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  CellEstimate Estimate() const {
    CellEstimate c{mean, std::numeric_limits<double>::infinity(), n};
    if (n >= 2) c.se = std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)) / n);
    return c;
  }
};

}  // namespace

EmpiricalPayoffMatrix EstimatePayoffs(const GameConfig& game,
                                      const PolicyPools& pools,
                                      const EstimateOptions& opts) {
  if (pools.cooperators.empty()) throw EmptyPool("cooperator pool is empty");
  if (pools.defectors.empty()) throw EmptyPool("defector pool is empty");
  if (opts.budget < 1 || opts.episodes_per_draw < 1) {
    throw std::invalid_argument("budget and episodes_per_draw must be >= 1");
  }
  Environment env(game);
  Accumulator R, P, S, T;
  const std::vector<PoolMember>* pool_of[2] = {&pools.cooperators, &pools.defectors};
  // Pairings as (player 1 side, player 2 side), 0 = C, 1 = D.
  constexpr int kPairings[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

  EmpiricalPayoffMatrix m;
  uint64_t draw = 0;
  for (int round = 0; round < opts.budget; ++round) {
    for (const auto& pairing : kPairings) {
      Rng rng(DeriveSeed(opts.seed, "draw", draw++));
      std::array<const PoolMember*, 2> members;
      for (int i = 0; i < 2; ++i) {
        const auto& pool = *pool_of[pairing[i]];
        members[i] = &pool[rng.UniformInt(pool.size())];
      }
      for (int e = 0; e < opts.episodes_per_draw; ++e) {
        std::unique_ptr<Policy> p0 = members[0]->make();
        std::unique_ptr<Policy> p1 = members[1]->make();
        std::array<Policy*, 2> agents = {p0.get(), p1.get()};
        EpisodeOptions eo;
        eo.env_seed = rng.NextU64();
        eo.eval_epsilon = opts.eval_epsilon;
        const EpisodeLog log = RunEpisode(env, agents, Mode::kEval, rng, eo);
        for (int i = 0; i < 2; ++i) {
          const double ret = log.undiscounted_return[i];
          const bool coop = pairing[i] == 0;
          const bool mixed = pairing[0] != pairing[1];
          if (!mixed) {
            (coop ? R : P).Add(ret);
          } else {
            (coop ? S : T).Add(ret);
          }
        }
      }
    }
    m.rounds = round + 1;
    m.R = R.Estimate();
    m.P = P.Estimate();
    m.S = S.Estimate();
    m.T = T.Estimate();
    double tol = opts.tolerance;
    if (std::isnan(tol)) {
      tol = 0.01 * std::max({std::abs(m.R.mean), std::abs(m.P.mean),
                             std::abs(m.S.mean), std::abs(m.T.mean)});
    }
    const std::array<CellEstimate, 4> cells = {m.R, m.P, m.S, m.T};
    const bool converged =
        std::all_of(cells.begin(), cells.end(), [tol](const CellEstimate& c) {
          return c.se < tol || c.se == 0.0;
        });
    if (converged) return m;
  }
  m.budget_exhausted = true;
  return m;
}

SsdVerdict CheckSsdInequalities(double R, double P, double S, double T) {
  SsdVerdict v;
  v.greed = T > R;
  v.fear = P > S;
  v.holds = {R > P, R > S, 2 * R > T + S, v.greed || v.fear};
  return v;
}

std::string DilemmaClass::Name() const {
  switch (kind) {
    case Kind::kPrisonersDilemma: return "PrisonersDilemma";
    case Kind::kChicken: return "Chicken";
    case Kind::kStagHunt: return "StagHunt";
    case Kind::kNotSocialDilemma: return "NotSocialDilemma";
  }
  return "?";
}

DilemmaClass ClassifyMatrix(double R, double P, double S, double T) {
  const SsdVerdict v = CheckSsdInequalities(R, P, S, T);
  DilemmaClass c;
  for (int k = 0; k < 4; ++k) {
    if (!v.holds[k]) c.failed.push_back(k + 1);
  }
  if (!c.failed.empty()) return c;
  if (v.greed && v.fear) {
    c.kind = DilemmaClass::Kind::kPrisonersDilemma;
  } else if (v.greed) {
    c.kind = DilemmaClass::Kind::kChicken;
  } else {
    c.kind = DilemmaClass::Kind::kStagHunt;
  }
  return c;
}

DilemmaClass ClassifyMatrix(const EmpiricalPayoffMatrix& m) {
  return ClassifyMatrix(m.R.mean, m.P.mean, m.S.mean, m.T.mean);
}

std::string FormatPayoffReport(const EmpiricalPayoffMatrix& m) {
  std::string out = "cell,mean,se,n\n";
  const std::pair<const char*, const CellEstimate*> cells[] = {
      {"R", &m.R}, {"P", &m.P}, {"S", &m.S}, {"T", &m.T}};
  for (const auto& [name, c] : cells) {
    out += fmt::format("{},{},{},{}\n", name, c->mean, c->se, c->n);
  }
  const SsdVerdict v = CheckSsdInequalities(m.R.mean, m.P.mean, m.S.mean, m.T.mean);
  out += fmt::format("# fear={} greed={} class={}", m.fear(), m.greed(),
                     ClassifyMatrix(m).Name());
  for (int k = 0; k < 4; ++k) {
    out += fmt::format(" cond{}={}", k + 1, v.holds[k] ? "pass" : "fail");
  }
  out += fmt::format(" rounds={} budget_exhausted={}\n", m.rounds,
                     m.budget_exhausted ? "true" : "false");
  return out;
}

EmpiricalPayoffMatrix ParsePayoffReport(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "cell,mean,se,n") {
    throw std::runtime_error("payoff report header mismatch");
  }
  EmpiricalPayoffMatrix m;
  int seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string kv;
      while (fields >> kv) {
        if (kv == "budget_exhausted=true") m.budget_exhausted = true;
        if (kv.rfind("rounds=", 0) == 0) m.rounds = std::stoi(kv.substr(7));
      }
      continue;
    }
    std::istringstream fields(line);
    std::string name, mean, se, n;
    std::getline(fields, name, ',');
    std::getline(fields, mean, ',');
    std::getline(fields, se, ',');
    std::getline(fields, n);
    CellEstimate* c = name == "R" ? &m.R : name == "P" ? &m.P
                    : name == "S" ? &m.S : name == "T" ? &m.T : nullptr;
    if (!c || mean.empty() || se.empty() || n.empty()) {
      throw std::runtime_error(fmt::format("bad payoff report row '{}'", line));
    }
    c->mean = std::stod(mean);
    c->se = std::stod(se);
    c->n = std::stol(n);
    ++seen;
  }
  if (seen != 4) throw std::runtime_error("payoff report needs R, P, S and T rows");
  return m;
}

}  // namespace ssdlab
