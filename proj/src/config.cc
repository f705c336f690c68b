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

#include "latstream/config.h"

#include <cmath>

#include "latstream/errors.h"

namespace latstream {

std::string ToString(Mode mode) {
  return mode == Mode::kSubmodular ? "submodular" : "alpha";
}

std::string ToString(LevelSearch search) {
  return search == LevelSearch::kBinary ? "binary" : "linear";
}

double AutoT() { return (3.0 + std::sqrt(5.0)) / 2.0; }

void AlgoConfig::Validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InputError("config", "epsilon must lie in (0, 1)");
  }
  if (mode == Mode::kSubmodular) {
    if (t && !(std::isfinite(*t) && *t >= 1.0)) {
      throw InputError("config", "t must be >= 1");
    }
  } else if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("config", "alpha must lie in (0, 1]");
  }
}

double AlgoConfig::Scale() const {
  return mode == Mode::kSubmodular ? ResolvedT() : 1.0 + alpha;
}

LevelSearch AlgoConfig::ResolvedLevelSearch() const {
  if (level_search) return *level_search;
  return mode == Mode::kSubmodular ? LevelSearch::kBinary
                                   : LevelSearch::kLinearScan;
}

}  // namespace latstream
