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

// Ground truth for small instances: exhaustive optimum, submodularity
// checkers, weak-submodularity ratio, and runtime forms of the per-instance
// guarantees.
//
// Property checkers work on the box with per-element caps min(b(e), k) and
// no cardinality limit, which contains x v x* for every feasible pair.

#ifndef LATSTREAM_VERIFY_H_
#define LATSTREAM_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latstream/config.h"
#include "latstream/lattice.h"
#include "latstream/oracle.h"
#include "latstream/ratios.h"
#include "latstream/sieve.h"

namespace latstream {

inline constexpr std::uint64_t kBruteForcePointCap = 10'000'000;
inline constexpr std::uint64_t kPropertyPointCap = 100'000;

struct OptimalSolution {
  LatticeVector x_star;
  double value = 0.0;
  std::uint64_t enumerated_count = 0;
};

// argmax g - c over {x <= b, x(E) <= k}, lexicographically smallest count
// vector among ties. Throws TooLargeError when prod(min(b,k)+1) exceeds
// kBruteForcePointCap.
OptimalSolution BruteForceOpt(const ProblemInstance& inst);
OptimalSolution BruteForceOpt(const ProblemInstance& inst,
                              const ConstraintSpec& constraint);

// Counterexample to a property: lhs <= rhs was expected.
struct PropertyWitness {
  std::string rule;
  LatticeVector x;
  LatticeVector y;
  std::optional<ElementId> element;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PropertyCheck {
  bool passed = true;
  std::uint64_t checked = 0;
  std::optional<PropertyWitness> witness;
};

// Per-element caps used by the checkers: min(b(e), k).
std::vector<Count> PropertyCaps(const ConstraintSpec& box);

// g(y + chi_e) - g(y) <= g(x + chi_e) - g(x) for all x <= y, e in the box.
PropertyCheck CheckDr(const GainOracle& g, const ConstraintSpec& box);

// Lattice submodularity: the marginal inequality for comparable x <= y at
// coordinates with x(e) = y(e), and g(x) + g(y) >= g(x v y) + g(x ^ y) for
// incomparable pairs.
PropertyCheck CheckLatticeSubmodular(const GainOracle& g,
                                     const ConstraintSpec& box);

// g(0) = 0 and x <= x + chi_e implies g(x) <= g(x + chi_e).
PropertyCheck CheckMonotoneNormalized(const GainOracle& g,
                                      const ConstraintSpec& box);

// Largest alpha in [0, 1] with alpha g(chi_e | t) <= g(chi_e | s) for all
// s <= t, t + chi_e in the box; 1 when no marginal is positive.
double EstimateAlpha(const GainOracle& g, const ConstraintSpec& box);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

struct GuaranteeReport {
  Mode mode = Mode::kSubmodular;
  int exponent = 0;
  double tau = 0.0;
  Count k = 0;
  double scale = 0.0;      // t or 1 + alpha
  double parameter = 0.0;  // t or alpha
  bool full = false;       // x(E) = k
  double mu = 0.0;
  double nu = 0.0;
  bool mu_nu_clamped = false;
  double objective = 0.0;  // g(x) - c(x)
  double lemma_bound = 0.0;
  RatioPair theorem_ratios;
  std::vector<BoundCheck> checks;

  bool satisfied() const;
};

// Case x(E) = k: replays the ledger against the oracle, then checks
// g(x) - s c(x) >= k tau and g(x) - c(x) >= k tau (tolerance 1e-9).
// Throws std::invalid_argument if x(E) != k.
GuaranteeReport ValidateLemmaFull(const ProblemInstance& inst,
                                  const AlgoConfig& cfg,
                                  const ThresholdInstance& run);

// Case x(E) < k: replays the ledger, computes mu, nu against opt and checks
//   submodular: g - c >= (t-1)/t g* - (t-1) c* + k tau (nu/t - (t-1)/t mu)
//   alpha:      g - c >= alpha/(1+alpha) g* - c* + k tau (nu - mu)/(1+alpha)
// Throws std::invalid_argument if x(E) >= k.
GuaranteeReport ValidateLemmaPartial(const ProblemInstance& inst,
                                     const AlgoConfig& cfg,
                                     const ThresholdInstance& run,
                                     const OptimalSolution& opt);

// Dispatches on x(E).
GuaranteeReport ValidateInstance(const ProblemInstance& inst,
                                 const AlgoConfig& cfg,
                                 const ThresholdInstance& run,
                                 const OptimalSolution& opt);

struct VerificationSummary {
  OptimalSolution opt;
  std::vector<GuaranteeReport> instances;
  bool optimum_dominates = true;
  // Observational: output versus rho_g g(x*) - rho_c c(x*).
  double reference_bound = 0.0;
  bool all_satisfied() const;
};

// Brute-forces the optimum over the arrived elements and validates every
// live instance of `report`.
VerificationSummary VerifyRun(const ProblemInstance& inst,
                              const AlgoConfig& cfg,
                              const SolutionReport& report);

// Constraint restricted to elements present in the stream.
ConstraintSpec ArrivedConstraint(const ProblemInstance& inst);

}  // namespace latstream

#endif  // LATSTREAM_VERIFY_H_
