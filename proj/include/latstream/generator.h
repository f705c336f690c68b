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

// Seeded desk-scale instances. Output depends only on the parameters: the
// generator avoids <random> distributions, whose results vary between
// standard libraries.

#ifndef LATSTREAM_GENERATOR_H_
#define LATSTREAM_GENERATOR_H_

#include <cstdint>
#include <random>
#include <string>

#include "latstream/stream_io.h"

namespace latstream {

enum class Family { kCoverage, kBudget, kAdversarial };

std::string ToString(Family family);
// Throws InputError("config") on an unknown name.
Family ParseFamily(const std::string& name);

struct GeneratorParams {
  Family family = Family::kCoverage;
  std::size_t n = 5;
  Count bmax = 3;
  Count k = 6;
  std::uint64_t seed = 0;
};

// mt19937_64 with hand-rolled uniform draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [lo, hi].
  std::uint64_t Between(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }

 private:
  std::mt19937_64 engine_;
};

// Elements e0..e{n-1}, b(e) uniform in [1, bmax], unit costs uniform in
// [0, 0.5], a random arrival permutation and an inline oracle:
//   coverage    - concave phi (capped / sqrt / exp) over random groups
//   budget      - budget allocation over random bipartite edges
//   adversarial - coverage form with phi(z) = z^2 (not DR-submodular)
// Throws InputError("config") when n or bmax is zero.
StreamSpec Generate(const GeneratorParams& params);

}  // namespace latstream

#endif  // LATSTREAM_GENERATOR_H_
