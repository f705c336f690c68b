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

// Gain oracles, linear cost models and the problem instance that ties them
// to a ground set and constraints.

#ifndef LATSTREAM_ORACLE_H_
#define LATSTREAM_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "latstream/lattice.h"

namespace latstream {

enum class OracleKind { kConcaveCoverage, kBudgetAllocation, kTable, kAdversarial };
enum class SubmodularityClass { kDrSubmodular, kLatticeSubmodular, kAlphaWeak };

std::string ToString(OracleKind kind);
std::string ToString(SubmodularityClass claim);

// Monotone, normalized gain function on a box of N^E.
//
// Evaluate() is the only entry point: it checks the box, counts the call on
// an atomic counter and dispatches to Value(). Subclasses must be pure.
class GainOracle {
 public:
  GainOracle(OracleKind kind, SubmodularityClass claim, std::vector<Count> box);
  virtual ~GainOracle() = default;

  GainOracle(const GainOracle&) = delete;
  GainOracle& operator=(const GainOracle&) = delete;

  // Throws DomainError when x leaves the declared box.
  double Evaluate(const LatticeVector& x) const;
  bool InBox(const LatticeVector& x) const;

  OracleKind kind() const { return kind_; }
  SubmodularityClass claim() const { return claim_; }
  const std::vector<Count>& box() const { return box_; }
  std::size_t size() const { return box_.size(); }

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
  void ResetCalls() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  virtual double Value(const LatticeVector& x) const = 0;

 private:
  OracleKind kind_;
  SubmodularityClass claim_;
  std::vector<Count> box_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// f(delta | base) = f(delta + base) - f(base). Two oracle calls.
double Marginal(const GainOracle& g, const LatticeVector& delta,
                const LatticeVector& base);

// Per-group scalar transform used by the coverage families.
struct Phi {
  enum class Type { kCappedLinear, kSqrt, kOneMinusExp, kSquare };
  Type type = Type::kCappedLinear;
  double cap = 1.0;  // only for kCappedLinear

  double operator()(double z) const;
  bool concave() const { return type != Type::kSquare; }
};

std::string ToString(Phi::Type type);

// g(x) = sum_j w_j * phi_j(sum_e a_je * x(e)).
//
// With nonnegative incidence and concave phi this is DR-submodular. The
// adversarial family reuses the same form with the convex phi(z) = z^2.
class CoverageOracle : public GainOracle {
 public:
  // incidence[j][e] >= 0; weights and phis are per group j.
  CoverageOracle(std::vector<double> weights,
                 std::vector<std::vector<double>> incidence,
                 std::vector<Phi> phis, std::vector<Count> box);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<double>>& incidence() const { return incidence_; }
  const std::vector<Phi>& phis() const { return phis_; }

 protected:
  double Value(const LatticeVector& x) const override;

 private:
  std::vector<double> weights_;
  std::vector<std::vector<double>> incidence_;
  std::vector<Phi> phis_;
};

// Budget allocation: g(x) = sum_t w_t * (1 - prod_{s -> t} (1 - p_s)^x(s)).
// incidence[t][s] != 0 marks an edge from source s to target t.
class BudgetAllocationOracle : public GainOracle {
 public:
  BudgetAllocationOracle(std::vector<double> weights,
                         std::vector<std::vector<double>> incidence,
                         std::vector<double> probabilities,
                         std::vector<Count> box);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::vector<double>>& incidence() const { return incidence_; }
  const std::vector<double>& probabilities() const { return probabilities_; }

 protected:
  double Value(const LatticeVector& x) const override;

 private:
  std::vector<double> weights_;
  std::vector<std::vector<double>> incidence_;
  std::vector<double> probabilities_;
};

// Explicit value for every lattice point of a finite box. `values` is laid
// out in lexicographic order of the dense count vector, element 0 most
// significant (the order of ForEachInBox).
class TableOracle : public GainOracle {
 public:
  TableOracle(std::vector<Count> box, std::vector<double> values,
              SubmodularityClass claim = SubmodularityClass::kAlphaWeak);

  const std::vector<double>& values() const { return values_; }
  std::size_t IndexOf(const LatticeVector& x) const;

 protected:
  double Value(const LatticeVector& x) const override;

 private:
  std::vector<double> values_;
  std::vector<std::uint64_t> strides_;
};

// c(x) = sum_e unit_costs(e) * x(e).
class CostModel {
 public:
  CostModel() = default;
  // Throws InputError("config") on a negative or non-finite unit cost.
  explicit CostModel(std::vector<double> unit_costs);

  double Evaluate(const LatticeVector& x) const;
  double Unit(ElementId e) const { return e < unit_costs_.size() ? unit_costs_[e] : 0.0; }
  const std::vector<double>& unit_costs() const { return unit_costs_; }

 private:
  std::vector<double> unit_costs_;
};

struct ProblemInstance {
  GroundSet ground;
  ConstraintSpec constraint;
  std::shared_ptr<const GainOracle> gain;
  CostModel cost;
  // Arrival order. Distinct ground elements; may omit some.
  std::vector<ElementId> stream_order;

  // Throws InputError when the parts disagree (sizes, oracle box not
  // dominating the constraint box, repeated or unknown stream elements).
  void Validate() const;
  bool StreamIsPermutation() const;
};

// g(x) - c(x). Throws InfeasibleError naming the violated constraint.
double Objective(const ProblemInstance& inst, const LatticeVector& x);

}  // namespace latstream

#endif  // LATSTREAM_ORACLE_H_
