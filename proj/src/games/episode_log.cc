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

#include "ssdlab/games/episode_log.h"

#include <cmath>

namespace ssdlab {

void EpisodeLog::Append(FrameRecord frame, std::array<double, 2> gamma) {
  const double t = static_cast<double>(frames.size());
  for (int i = 0; i < 2; ++i) {
    undiscounted_return[i] += frame.rewards[i];
    if (frame.rewards[i] != 0.0) {
      discounted_return[i] += std::pow(gamma[i], t) * frame.rewards[i];
    }
  }
  frames.push_back(std::move(frame));
}

namespace {

void CountBeams(const EpisodeLog& log, int agent, long* beams, long* both) {
  for (const FrameRecord& f : log.frames) {
    if (!(f.active[0] && f.active[1])) continue;
    ++*both;
    if (f.actions[agent] == Action::kUseBeam) ++*beams;
  }
}

void CountCaptures(const EpisodeLog& log, long* captures, long* wolves) {
  for (const FrameRecord& f : log.frames) {
    for (const GameEvent& e : f.events) {
      if (e.type != GameEvent::Type::kCapture) continue;
      ++*captures;
      *wolves += e.wolf_count;
    }
  }
}

std::optional<WolvesPerCapture> Finish(long captures, long wolves) {
  if (captures == 0) return std::nullopt;
  WolvesPerCapture out;
  out.captures = static_cast<int>(captures);
  out.mean = static_cast<double>(wolves) / static_cast<double>(captures);
  out.plotted = 2.0 - out.mean;
  return out;
}

}  // namespace

double BeamUseRate(const EpisodeLog& log, int agent) {
  long beams = 0, both = 0;
  CountBeams(log, agent, &beams, &both);
  return both == 0 ? 0.0 : static_cast<double>(beams) / both;
}

double BeamUseRate(const std::vector<EpisodeLog>& logs, int agent) {
  long beams = 0, both = 0;
  for (const EpisodeLog& log : logs) CountBeams(log, agent, &beams, &both);
  return both == 0 ? 0.0 : static_cast<double>(beams) / both;
}

std::optional<WolvesPerCapture> MeanWolvesPerCapture(const EpisodeLog& log) {
  long captures = 0, wolves = 0;
  CountCaptures(log, &captures, &wolves);
  return Finish(captures, wolves);
}

std::optional<WolvesPerCapture> MeanWolvesPerCapture(
    const std::vector<EpisodeLog>& logs) {
  long captures = 0, wolves = 0;
  for (const EpisodeLog& log : logs) CountCaptures(log, &captures, &wolves);
  return Finish(captures, wolves);
}

}  // namespace ssdlab
