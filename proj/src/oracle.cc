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

#include "latstream/oracle.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "latstream/errors.h"

namespace latstream {
namespace {

void RequireMatrix(const std::vector<std::vector<double>>& matrix,
                   std::size_t rows, std::size_t cols, const char* what) {
  if (matrix.size() != rows) {
    throw InputError("config", std::string(what) + ": expected " +
                                   std::to_string(rows) + " rows, got " +
                                   std::to_string(matrix.size()));
  }
  for (const auto& row : matrix) {
    if (row.size() != cols) {
      throw InputError("config", std::string(what) + ": expected rows of " +
                                     std::to_string(cols) + " entries");
    }
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("config", std::string(what) +
                                       ": entries must be finite and >= 0");
      }
    }
  }
}

void RequireNonNegative(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError("config",
                       std::string(what) + " must be finite and >= 0");
    }
  }
}

SubmodularityClass CoverageClaim(const std::vector<Phi>& phis) {
  const bool concave = std::all_of(phis.begin(), phis.end(),
                                   [](const Phi& phi) { return phi.concave(); });
  return concave ? SubmodularityClass::kDrSubmodular
                 : SubmodularityClass::kAlphaWeak;
}

OracleKind CoverageKind(const std::vector<Phi>& phis) {
  return CoverageClaim(phis) == SubmodularityClass::kDrSubmodular
             ? OracleKind::kConcaveCoverage
             : OracleKind::kAdversarial;
}

}  // namespace

std::string ToString(OracleKind kind) {
  switch (kind) {
    case OracleKind::kConcaveCoverage:
      return "coverage";
    case OracleKind::kBudgetAllocation:
      return "budget";
    case OracleKind::kTable:
      return "table";
    case OracleKind::kAdversarial:
      return "adversarial";
  }
  return "unknown";
}

std::string ToString(SubmodularityClass claim) {
  switch (claim) {
    case SubmodularityClass::kDrSubmodular:
      return "dr-submodular";
    case SubmodularityClass::kLatticeSubmodular:
      return "lattice-submodular";
    case SubmodularityClass::kAlphaWeak:
      return "alpha-weak";
  }
  return "unknown";
}

std::string ToString(Phi::Type type) {
  switch (type) {
    case Phi::Type::kCappedLinear:
      return "capped";
    case Phi::Type::kSqrt:
      return "sqrt";
    case Phi::Type::kOneMinusExp:
      return "exp";
    case Phi::Type::kSquare:
      return "square";
  }
  return "unknown";
}

GainOracle::GainOracle(OracleKind kind, SubmodularityClass claim,
                       std::vector<Count> box)
    : kind_(kind), claim_(claim), box_(std::move(box)) {}

bool GainOracle::InBox(const LatticeVector& x) const {
  return std::all_of(x.begin(), x.end(), [this](const auto& entry) {
    const auto& [e, c] = entry;
    return e < box_.size() && (box_[e] == kUnbounded || c <= box_[e]);
  });
}

double GainOracle::Evaluate(const LatticeVector& x) const {
  if (!InBox(x)) {
    throw DomainError("gain oracle evaluated outside its box at " +
                      ToString(x));
  }
  calls_.fetch_add(1, std::memory_order_relaxed);
  return Value(x);
}

double Marginal(const GainOracle& g, const LatticeVector& delta,
                const LatticeVector& base) {
  return g.Evaluate(delta + base) - g.Evaluate(base);
}

double Phi::operator()(double z) const {
  switch (type) {
    case Type::kCappedLinear:
      return std::min(z, cap);
    case Type::kSqrt:
      return std::sqrt(z);
    case Type::kOneMinusExp:
      return -std::expm1(-z);
    case Type::kSquare:
      return z * z;
  }
  return 0.0;
}

CoverageOracle::CoverageOracle(std::vector<double> weights,
                               std::vector<std::vector<double>> incidence,
                               std::vector<Phi> phis, std::vector<Count> box)
    : GainOracle(CoverageKind(phis), CoverageClaim(phis), std::move(box)),
      weights_(std::move(weights)),
      incidence_(std::move(incidence)),
      phis_(std::move(phis)) {
  RequireNonNegative(weights_, "coverage weights");
  RequireMatrix(incidence_, weights_.size(), size(), "coverage incidence");
  if (phis_.size() != weights_.size()) {
    throw InputError("config", "coverage: one phi per group required");
  }
  for (const Phi& phi : phis_) {
    if (phi.type == Phi::Type::kCappedLinear &&
        (!std::isfinite(phi.cap) || phi.cap < 0.0)) {
      throw InputError("config", "coverage: capped phi needs a finite cap >= 0");
    }
  }
}

double CoverageOracle::Value(const LatticeVector& x) const {
  double total = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    double load = 0.0;
    for (const auto& [e, c] : x) load += incidence_[j][e] * static_cast<double>(c);
    total += weights_[j] * phis_[j](load);
  }
  return total;
}

BudgetAllocationOracle::BudgetAllocationOracle(
    std::vector<double> weights, std::vector<std::vector<double>> incidence,
    std::vector<double> probabilities, std::vector<Count> box)
    : GainOracle(OracleKind::kBudgetAllocation,
                 SubmodularityClass::kLatticeSubmodular, std::move(box)),
      weights_(std::move(weights)),
      incidence_(std::move(incidence)),
      probabilities_(std::move(probabilities)) {
  RequireNonNegative(weights_, "budget weights");
  RequireMatrix(incidence_, weights_.size(), size(), "budget incidence");
  if (probabilities_.size() != size()) {
    throw InputError("config", "budget: one probability per element required");
  }
  for (double p : probabilities_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("config", "budget: probabilities must lie in [0, 1]");
    }
  }
}

double BudgetAllocationOracle::Value(const LatticeVector& x) const {
  double total = 0.0;
  for (std::size_t t = 0; t < weights_.size(); ++t) {
    double miss = 1.0;
    for (const auto& [s, c] : x) {
      if (incidence_[t][s] != 0.0) {
        miss *= std::pow(1.0 - probabilities_[s], static_cast<double>(c));
      }
    }
    total += weights_[t] * (1.0 - miss);
  }
  return total;
}

TableOracle::TableOracle(std::vector<Count> box, std::vector<double> values,
                         SubmodularityClass claim)
    : GainOracle(OracleKind::kTable, claim, std::move(box)),
      values_(std::move(values)),
      strides_(size(), 1) {
  std::uint64_t points = 1;
  for (std::size_t i = size(); i > 0; --i) {
    const Count cap = this->box()[i - 1];
    if (cap == kUnbounded || cap > 1'000'000) {
      throw InputError("config", "table oracle needs a small finite box");
    }
    strides_[i - 1] = points;
    points *= cap + 1;
    if (points > 10'000'000) {
      throw InputError("config", "table oracle box is too large");
    }
  }
  if (values_.size() != points) {
    throw InputError("config", "table oracle: expected " +
                                   std::to_string(points) + " values, got " +
                                   std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw InputError("config", "table oracle values must be finite");
    }
  }
}

std::size_t TableOracle::IndexOf(const LatticeVector& x) const {
  std::size_t index = 0;
  for (const auto& [e, c] : x) index += static_cast<std::size_t>(c * strides_[e]);
  return index;
}

double TableOracle::Value(const LatticeVector& x) const {
  return values_[IndexOf(x)];
}

CostModel::CostModel(std::vector<double> unit_costs)
    : unit_costs_(std::move(unit_costs)) {
  for (double c : unit_costs_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw InputError("config", "unit costs must be finite and >= 0");
    }
  }
}

double CostModel::Evaluate(const LatticeVector& x) const {
  double total = 0.0;
  for (const auto& [e, c] : x) total += Unit(e) * static_cast<double>(c);
  return total;
}

bool ProblemInstance::StreamIsPermutation() const {
  return stream_order.size() == ground.size();
}

void ProblemInstance::Validate() const {
  const std::size_t n = ground.size();
  if (constraint.box.size() != n) {
    throw InputError("config", "box has " +
                                   std::to_string(constraint.box.size()) +
                                   " entries for " + std::to_string(n) +
                                   " elements");
  }
  if (cost.unit_costs().size() != n) {
    throw InputError("config", "cost model has " +
                                   std::to_string(cost.unit_costs().size()) +
                                   " entries for " + std::to_string(n) +
                                   " elements");
  }
  if (!gain) throw InputError("config", "missing gain oracle");
  if (gain->size() != n) {
    throw InputError("config", "gain oracle covers " +
                                   std::to_string(gain->size()) +
                                   " elements, ground set has " +
                                   std::to_string(n));
  }
  for (std::size_t e = 0; e < n; ++e) {
    const Count declared = gain->box()[e];
    const Count wanted = constraint.box[e];
    // The oracle only needs to cover what the budget can reach.
    const Count reachable = std::min(wanted, constraint.k);
    if (declared != kUnbounded && reachable > declared) {
      throw InputError("config", "gain oracle box does not cover element '" +
                                     ground.name(static_cast<ElementId>(e)) +
                                     "'");
    }
  }
  std::unordered_set<ElementId> seen;
  for (ElementId e : stream_order) {
    if (e >= n) throw InputError("format", "stream names an unknown element");
    if (!seen.insert(e).second) {
      throw InputError("format", "element '" + ground.name(e) +
                                     "' arrives more than once");
    }
  }
}

double Objective(const ProblemInstance& inst, const LatticeVector& x) {
  if (auto violation = inst.constraint.Violation(x)) {
    throw InfeasibleError(*violation);
  }
  return inst.gain->Evaluate(x) - inst.cost.Evaluate(x);
}

}  // namespace latstream
