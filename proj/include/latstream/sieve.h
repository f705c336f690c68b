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

// One-pass threshold streaming for max g(x) - c(x) s.t. x <= b, x(E) <= k.
//
// Each ThresholdInstance owns a threshold tau and a private solution. When
// element e arrives it takes the largest level l with
//
//   [g(l chi_e | x) - s c(l chi_e)] / l >= tau
//
// (s = t in submodular mode, 1 + alpha in alpha mode), capped by
// min{b(e) - x(e), k - x(E)}. SieveState runs one instance per power of
// (1 + epsilon) inside a window derived from the best net singleton value
// seen so far, spawning and dropping instances as that value grows.

#ifndef LATSTREAM_SIEVE_H_
#define LATSTREAM_SIEVE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "latstream/config.h"
#include "latstream/lattice.h"
#include "latstream/oracle.h"
#include "latstream/ratios.h"

namespace latstream {

// [g(l chi_e | x) - s c(l chi_e)] / l. Two oracle calls.
// Requires l >= 1; throws DomainError if x + l chi_e leaves the box.
double AcceptanceValue(const ProblemInstance& inst, const AlgoConfig& cfg,
                       const LatticeVector& x, ElementId e, Count l);

// min{b(e) - x(e), k - x(E)}, clamped at 0.
Count LevelCeiling(const ProblemInstance& inst, const LatticeVector& x,
                   ElementId e);

// Level search. Returns 0 when the ceiling is 0 or level 1 fails the
// threshold, the ceiling when it passes, and otherwise a level l with
// value(l) >= tau > value(l + 1), found by bisection or by descending scan
// according to cfg. For DR-submodular gains both searches return the
// largest passing level.
Count BsLevel(const ProblemInstance& inst, const AlgoConfig& cfg,
              const LatticeVector& x, ElementId e, double tau);

// One accepted update x <- x + level * chi_element.
struct LedgerEntry {
  ElementId element = 0;
  Count level = 0;
  double gain_delta = 0.0;  // g(level chi_e | x_before)
  double cost_delta = 0.0;  // c(level chi_e)
};

struct StepRecord {
  ElementId element = 0;
  Count ceiling = 0;
  Count level = 0;
  std::uint64_t oracle_calls = 0;
};

class ThresholdInstance {
 public:
  ThresholdInstance(int exponent, double tau, double scale);

  // Rebuilds an instance from a recorded ledger without consulting any
  // oracle. Deltas are taken as given; validators replay them.
  static ThresholdInstance FromLedger(int exponent, double tau, double scale,
                                      std::vector<LedgerEntry> ledger);

  // Processes one arriving element. Oracle calls are measured on the gain
  // oracle's counter, so steps must not run concurrently on one oracle.
  StepRecord Step(const ProblemInstance& inst, const AlgoConfig& cfg,
                  ElementId e);

  int exponent() const { return exponent_; }
  double tau() const { return tau_; }
  double scale() const { return scale_; }
  const LatticeVector& x() const { return x_; }
  // Sum of recorded gain deltas, i.e. g(x) - g(0).
  double gain() const { return gain_; }
  double cost() const { return cost_; }
  const std::vector<LedgerEntry>& ledger() const { return ledger_; }
  const std::vector<StepRecord>& steps() const { return steps_; }
  std::uint64_t oracle_calls() const { return oracle_calls_; }
  std::uint64_t max_step_calls() const { return max_step_calls_; }

  // sum_i [gain_delta_i - s cost_delta_i] - tau x(E). Nonnegative for any
  // ledger the level search produced.
  double LedgerSurplus() const;

 private:
  int exponent_;
  double tau_;
  double scale_;
  LatticeVector x_;
  double gain_ = 0.0;
  double cost_ = 0.0;
  std::optional<double> base_value_;  // cached g(x)
  std::vector<LedgerEntry> ledger_;
  std::vector<StepRecord> steps_;
  std::uint64_t oracle_calls_ = 0;
  std::uint64_t max_step_calls_ = 0;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

// Admissible thresholds for singleton maximum m: [m/k, m] in submodular
// mode, [m/k, m/alpha] in alpha mode. Empty when m <= 0 or k = 0.
std::optional<Window> GridWindow(double m, Count k, const AlgoConfig& cfg);

// Upper bound on simultaneously live instances:
// ceil(log_{1+eps} k) + 2, or ceil(log_{1+eps}(k / alpha)) + 2.
std::size_t LiveInstanceBound(Count k, const AlgoConfig& cfg);

class SieveState {
 public:
  // `inst` must outlive the state.
  SieveState(const ProblemInstance& inst, AlgoConfig cfg);

  // Updates m, spawns instances entering the window, drops instances with
  // tau < lo / (1 + eps), then advances every live instance on e.
  void Step(ElementId e);

  double singleton_max() const { return m_; }
  const std::map<int, ThresholdInstance>& live() const { return live_; }
  std::size_t peak_live() const { return peak_live_; }
  std::size_t spawned() const { return spawned_; }
  std::size_t dropped() const { return dropped_; }
  std::size_t elements() const { return elements_; }
  // Per element per instance maximum over the whole stream.
  std::uint64_t max_step_calls() const { return max_step_calls_; }

 private:
  const ProblemInstance& inst_;
  AlgoConfig cfg_;
  double log_base_;
  double m_ = 0.0;
  std::map<int, ThresholdInstance> live_;
  std::optional<int> top_spawned_;
  std::size_t peak_live_ = 0;
  std::size_t spawned_ = 0;
  std::size_t dropped_ = 0;
  std::size_t elements_ = 0;
  std::uint64_t max_step_calls_ = 0;
};

struct SolutionReport {
  AlgoConfig config;
  double scale = 0.0;
  LevelSearch level_search = LevelSearch::kBinary;

  std::optional<int> chosen_exponent;
  std::optional<double> chosen_tau;
  LatticeVector x;
  double gain = 0.0;
  double cost = 0.0;
  double objective = 0.0;

  double singleton_max = 0.0;
  std::size_t elements = 0;
  std::size_t peak_live = 0;
  std::size_t live_bound = 0;
  std::size_t spawned = 0;
  std::size_t dropped = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t max_step_calls = 0;

  // Instances alive at the end of the stream, by ascending exponent.
  std::vector<ThresholdInstance> instances;
  // Worst-case (mu = 1, nu = 0) coefficients for the configured mode.
  RatioPair ratios;
};

// Single pass over inst.stream_order. Throws InputError on a bad config or
// instance.
SolutionReport Run(const ProblemInstance& inst, const AlgoConfig& cfg);

}  // namespace latstream

#endif  // LATSTREAM_SIEVE_H_
