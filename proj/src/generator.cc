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

#include "latstream/generator.h"

#include <algorithm>
#include <utility>

#include "latstream/errors.h"
#include "latstream/oracle_spec.h"

namespace latstream {
namespace {

// rows x n incidence matrix where every column has at least one entry.
std::vector<std::vector<double>> RandomIncidence(Rng& rng, std::size_t rows,
                                                 std::size_t n, bool binary) {
  std::vector<std::vector<double>> incidence(rows, std::vector<double>(n, 0.0));
  for (std::size_t e = 0; e < n; ++e) {
    bool any = false;
    for (std::size_t j = 0; j < rows; ++j) {
      if (rng.Uniform() < 0.5) {
        incidence[j][e] = binary ? 1.0 : rng.Uniform(0.2, 1.0);
        any = true;
      }
    }
    if (!any) incidence[rng.Between(0, rows - 1)][e] = binary ? 1.0 : rng.Uniform(0.2, 1.0);
  }
  return incidence;
}

std::vector<double> RandomWeights(Rng& rng, std::size_t count, double lo,
                                  double hi) {
  std::vector<double> weights(count);
  for (double& w : weights) w = rng.Uniform(lo, hi);
  return weights;
}

}  // namespace

std::string ToString(Family family) {
  switch (family) {
    case Family::kCoverage:
      return "coverage";
    case Family::kBudget:
      return "budget";
    case Family::kAdversarial:
      return "adversarial";
  }
  return "unknown";
}

Family ParseFamily(const std::string& name) {
  if (name == "coverage") return Family::kCoverage;
  if (name == "budget") return Family::kBudget;
  if (name == "adversarial") return Family::kAdversarial;
  throw InputError("config", "unknown family '" + name + "'");
}

StreamSpec Generate(const GeneratorParams& params) {
  if (params.n == 0) throw InputError("config", "gen: n must be >= 1");
  if (params.bmax == 0) throw InputError("config", "gen: bmax must be >= 1");
  Rng rng(params.seed);
  const std::size_t n = params.n;

  StreamSpec spec;
  spec.k = params.k;
  for (std::size_t e = 0; e < n; ++e) {
    spec.elements.push_back("e" + std::to_string(e));
    spec.box.push_back(rng.Between(1, params.bmax));
    spec.costs.push_back(rng.Uniform(0.0, 0.5));
  }

  const std::size_t rows = std::max<std::size_t>(2, n);
  switch (params.family) {
    case Family::kCoverage: {
      auto weights = RandomWeights(rng, rows, 0.5, 1.5);
      auto incidence = RandomIncidence(rng, rows, n, /*binary=*/false);
      std::vector<Phi> phis;
      for (std::size_t j = 0; j < rows; ++j) {
        switch (rng.Between(0, 2)) {
          case 0:
            phis.push_back(Phi{Phi::Type::kCappedLinear, rng.Uniform(1.0, 3.0)});
            break;
          case 1:
            phis.push_back(Phi{Phi::Type::kSqrt, 1.0});
            break;
          default:
            phis.push_back(Phi{Phi::Type::kOneMinusExp, 1.0});
            break;
        }
      }
      CoverageOracle oracle(std::move(weights), std::move(incidence),
                            std::move(phis), spec.box);
      spec.oracle = OracleToJson(oracle);
      break;
    }
    case Family::kBudget: {
      auto weights = RandomWeights(rng, rows, 0.5, 1.5);
      auto incidence = RandomIncidence(rng, rows, n, /*binary=*/true);
      std::vector<double> probabilities(n);
      for (double& p : probabilities) p = rng.Uniform(0.1, 0.6);
      BudgetAllocationOracle oracle(std::move(weights), std::move(incidence),
                                    std::move(probabilities), spec.box);
      spec.oracle = OracleToJson(oracle);
      break;
    }
    case Family::kAdversarial: {
      auto weights = RandomWeights(rng, rows, 0.05, 0.3);
      auto incidence = RandomIncidence(rng, rows, n, /*binary=*/false);
      // One group sees every element, so two distinct elements always
      // interact through the convex phi.
      for (std::size_t e = 0; e < n; ++e) {
        if (incidence[0][e] == 0.0) incidence[0][e] = rng.Uniform(0.2, 1.0);
      }
      std::vector<Phi> phis(rows, Phi{Phi::Type::kSquare, 0.0});
      CoverageOracle oracle(std::move(weights), std::move(incidence),
                            std::move(phis), spec.box);
      spec.oracle = OracleToJson(oracle);
      break;
    }
  }

  spec.order.resize(n);
  for (std::size_t e = 0; e < n; ++e) spec.order[e] = static_cast<ElementId>(e);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(spec.order[i], spec.order[rng.Between(0, i)]);
  }
  return spec;
}

}  // namespace latstream
