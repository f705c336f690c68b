// Copyright 2026 The Authors.
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

#ifndef LATSTREAM_CONFIG_H_
#define LATSTREAM_CONFIG_H_

#include <optional>
#include <string>

namespace latstream {

enum class Mode { kSubmodular, kAlphaWeak };
enum class LevelSearch { kBinary, kLinearScan };

std::string ToString(Mode mode);
std::string ToString(LevelSearch search);

// (3 + sqrt(5)) / 2: the cost-balancing root at mu = 1, nu = 0.
double AutoT();

struct AlgoConfig {
  Mode mode = Mode::kSubmodular;
  // Cost multiplier in submodular mode; nullopt means "auto".
  std::optional<double> t;
  // Weak-submodularity ratio in alpha mode.
  double alpha = 1.0;
  // Threshold grid ratio: taus are integer powers of (1 + epsilon).
  double epsilon = 0.1;
  // nullopt picks binary in submodular mode and linear scan in alpha mode.
  std::optional<LevelSearch> level_search;

  // Throws InputError("config") when a parameter is out of range.
  void Validate() const;

  double ResolvedT() const { return t.value_or(AutoT()); }
  // The cost multiplier s in g(l chi_e | x) - s c(l chi_e): t, or 1 + alpha.
  double Scale() const;
  LevelSearch ResolvedLevelSearch() const;
};

}  // namespace latstream

#endif  // LATSTREAM_CONFIG_H_
