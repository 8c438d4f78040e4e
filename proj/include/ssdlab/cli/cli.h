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

#ifndef SSDLAB_CLI_CLI_H_
#define SSDLAB_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ssdlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

// Runs one command. `args` excludes the program name. Data goes to `out`,
// diagnostics to `err`.
//
//   train --config FILE [--seed N]
//   sweep --config FILE [--parallelism N]
//   egta --config FILE --manifest FILE [--alpha-c X --alpha-d Y]
//        [--out FILE] [--pool-out FILE] [--seed N] [--tolerance X]
//        [--budget N] [--episodes-per-draw N]
//   classify --r R --p P --s S --t T
//   replay (--log FILE | --checkpoints A B) (--config FILE | --map FILE
//          --game G) [--seed N] [--frames N] [--log-out FILE]
//   validate-config FILE
//   figure --kind heatmap|sweep-curves|scatter --input FILE...
//          [--x KEY] [--y KEY] [--out FILE]
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace ssdlab

#endif  // SSDLAB_CLI_CLI_H_
