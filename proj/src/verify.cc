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

#include "latstream/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "latstream/errors.h"

namespace latstream {
namespace {

// Every point of a small box with its gain value, addressable by dense
// mixed-radix index (element 0 most significant).
class BoxTable {
 public:
  BoxTable(const GainOracle& g, std::vector<Count> caps)
      : caps_(std::move(caps)), strides_(caps_.size(), 1) {
    if (BoxPointCount(caps_, kPropertyPointCap) > kPropertyPointCap) {
      throw TooLargeError("property box exceeds " +
                          std::to_string(kPropertyPointCap) + " points");
    }
    std::uint64_t stride = 1;
    for (std::size_t i = caps_.size(); i > 0; --i) {
      strides_[i - 1] = stride;
      stride *= caps_[i - 1] + 1;
    }
    points_.reserve(stride);
    values_.reserve(stride);
    ForEachInBox(caps_, [&](const std::vector<Count>& counts) {
      points_.push_back(counts);
      values_.push_back(g.Evaluate(LatticeVector::FromDense(counts)));
      return true;
    });
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<Count>& point(std::size_t i) const { return points_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  Count cap(std::size_t e) const { return caps_[e]; }
  std::size_t dims() const { return caps_.size(); }
  std::size_t step(std::size_t e) const { return strides_[e]; }

  std::size_t IndexOf(const std::vector<Count>& counts) const {
    std::size_t index = 0;
    for (std::size_t e = 0; e < counts.size(); ++e) index += counts[e] * strides_[e];
    return index;
  }

  // g(chi_e | point i); requires point(i)[e] < cap(e).
  double UnitMarginal(std::size_t i, std::size_t e) const {
    return values_[i + strides_[e]] - values_[i];
  }

  // Calls visit(j) for every point j <= point(i).
  template <typename Visitor>
  bool ForEachBelow(std::size_t i, Visitor&& visit) const {
    const std::vector<Count>& top = points_[i];
    bool keep_going = true;
    ForEachInBox(top, [&](const std::vector<Count>& counts) {
      keep_going = visit(IndexOf(counts));
      return keep_going;
    });
    return keep_going;
  }

 private:
  std::vector<Count> caps_;
  std::vector<std::size_t> strides_;
  std::vector<std::vector<Count>> points_;
  std::vector<double> values_;
};

PropertyWitness MakeWitness(std::string rule, const BoxTable& table,
                            std::size_t x, std::size_t y,
                            std::optional<ElementId> e, double lhs, double rhs) {
  PropertyWitness witness;
  witness.rule = std::move(rule);
  witness.x = LatticeVector::FromDense(table.point(x));
  witness.y = LatticeVector::FromDense(table.point(y));
  witness.element = e;
  witness.lhs = lhs;
  witness.rhs = rhs;
  return witness;
}

// Marginal inequality g(chi_e | y) <= g(chi_e | x) over x <= y. With
// `same_coordinate` only coordinates where x(e) = y(e) are tested.
PropertyCheck CheckMarginals(const BoxTable& table, bool same_coordinate,
                             const char* rule) {
  PropertyCheck result;
  for (std::size_t y = 0; y < table.size() && result.passed; ++y) {
    const auto& ypt = table.point(y);
    table.ForEachBelow(y, [&](std::size_t x) {
      const auto& xpt = table.point(x);
      for (std::size_t e = 0; e < table.dims(); ++e) {
        if (ypt[e] >= table.cap(e)) continue;
        if (same_coordinate && xpt[e] != ypt[e]) continue;
        ++result.checked;
        const double at_y = table.UnitMarginal(y, e);
        const double at_x = table.UnitMarginal(x, e);
        if (at_y > at_x + kValueTolerance) {
          result.passed = false;
          result.witness = MakeWitness(rule, table, x, y,
                                       static_cast<ElementId>(e), at_y, at_x);
          return false;
        }
      }
      return true;
    });
  }
  return result;
}

bool Comparable(const std::vector<Count>& a, const std::vector<Count>& b) {
  bool a_le_b = true;
  bool b_le_a = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a_le_b = a_le_b && a[i] <= b[i];
    b_le_a = b_le_a && b[i] <= a[i];
  }
  return a_le_b || b_le_a;
}

std::vector<LedgerEntry> ReplayEntries(const ThresholdInstance& run) {
  return run.ledger();
}

// Re-derives every ledger step from the oracle. Appends checks to `report`
// and returns the replayed (g(x), c(x)).
std::pair<double, double> ReplayLedger(const ProblemInstance& inst,
                                       const ThresholdInstance& run,
                                       GuaranteeReport& report) {
  LatticeVector x;
  double gain = inst.gain->Evaluate(x);
  const double base_gain = gain;
  double cost = 0.0;
  std::optional<BoundCheck> first_bad;
  std::optional<std::string> infeasible;
  for (const LedgerEntry& entry : ReplayEntries(run)) {
    LatticeVector next = AddScaled(x, entry.element, entry.level);
    if (auto violation = inst.constraint.Violation(next)) {
      infeasible = *violation;
      break;
    }
    if (entry.level == 0) {
      infeasible = "ledger entry with level 0";
      break;
    }
    const double next_gain = inst.gain->Evaluate(next);
    const double step_cost = inst.cost.Unit(entry.element) * static_cast<double>(entry.level);
    const double per_unit = (next_gain - gain - run.scale() * step_cost) /
                            static_cast<double>(entry.level);
    if (!first_bad && per_unit < run.tau() - kValueTolerance) {
      first_bad = BoundCheck{"ledger.per_unit_acceptance", per_unit, run.tau(), false};
    }
    x = std::move(next);
    gain = next_gain;
    cost += step_cost;
  }
  report.checks.push_back(BoundCheck{"ledger.feasible", infeasible ? 0.0 : 1.0,
                                     1.0, !infeasible});
  if (first_bad) {
    report.checks.push_back(*first_bad);
  } else {
    report.checks.push_back(
        BoundCheck{"ledger.per_unit_acceptance", run.tau(), run.tau(), true});
  }
  report.checks.push_back(BoundCheck{"ledger.replay_matches",
                                     static_cast<double>(x.total()),
                                     static_cast<double>(run.x().total()),
                                     x == run.x()});
  const double surplus_lhs = (gain - base_gain) - run.scale() * cost;
  const double surplus_rhs = run.tau() * static_cast<double>(x.total());
  report.checks.push_back(BoundCheck{"ledger.sum_at_least_tau_total", surplus_lhs,
                                     surplus_rhs,
                                     surplus_lhs >= surplus_rhs - kValueTolerance});
  return {gain, cost};
}

GuaranteeReport BaseReport(const ProblemInstance& inst, const AlgoConfig& cfg,
                           const ThresholdInstance& run) {
  GuaranteeReport report;
  report.mode = cfg.mode;
  report.exponent = run.exponent();
  report.tau = run.tau();
  report.k = inst.constraint.k;
  report.scale = run.scale();
  report.parameter = cfg.mode == Mode::kSubmodular ? cfg.ResolvedT() : cfg.alpha;
  return report;
}

}  // namespace

OptimalSolution BruteForceOpt(const ProblemInstance& inst) {
  return BruteForceOpt(inst, inst.constraint);
}

OptimalSolution BruteForceOpt(const ProblemInstance& inst,
                              const ConstraintSpec& constraint) {
  std::vector<Count> caps(constraint.size());
  for (std::size_t e = 0; e < caps.size(); ++e) {
    caps[e] = constraint.Cap(static_cast<ElementId>(e));
  }
  if (BoxPointCount(caps, kBruteForcePointCap) > kBruteForcePointCap) {
    throw TooLargeError("instance has more than " +
                        std::to_string(kBruteForcePointCap) +
                        " lattice points to enumerate");
  }
  OptimalSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  ForEachInBox(caps, [&](const std::vector<Count>& counts) {
    Count total = 0;
    for (Count c : counts) total += c;
    if (total > constraint.k) return true;
    LatticeVector x = LatticeVector::FromDense(counts);
    const double value = inst.gain->Evaluate(x) - inst.cost.Evaluate(x);
    ++best.enumerated_count;
    // Strict comparison keeps the lexicographically smallest maximizer.
    if (value > best.value) {
      best.value = value;
      best.x_star = std::move(x);
    }
    return true;
  });
  return best;
}

std::vector<Count> PropertyCaps(const ConstraintSpec& box) {
  std::vector<Count> caps(box.size());
  for (std::size_t e = 0; e < caps.size(); ++e) {
    caps[e] = box.Cap(static_cast<ElementId>(e));
  }
  return caps;
}

PropertyCheck CheckDr(const GainOracle& g, const ConstraintSpec& box) {
  BoxTable table(g, PropertyCaps(box));
  return CheckMarginals(table, /*same_coordinate=*/false, "dr-submodular");
}

PropertyCheck CheckLatticeSubmodular(const GainOracle& g,
                                     const ConstraintSpec& box) {
  BoxTable table(g, PropertyCaps(box));
  PropertyCheck result =
      CheckMarginals(table, /*same_coordinate=*/true, "lattice-marginal");
  if (!result.passed) return result;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const auto& a = table.point(i);
      const auto& b = table.point(j);
      if (Comparable(a, b)) continue;
      std::vector<Count> join(a.size());
      std::vector<Count> meet(a.size());
      for (std::size_t e = 0; e < a.size(); ++e) {
        join[e] = std::max(a[e], b[e]);
        meet[e] = std::min(a[e], b[e]);
      }
      ++result.checked;
      const double lhs = table.value(table.IndexOf(join)) + table.value(table.IndexOf(meet));
      const double rhs = table.value(i) + table.value(j);
      if (lhs > rhs + kValueTolerance) {
        result.passed = false;
        result.witness = MakeWitness("lattice-join-meet", table, i, j,
                                     std::nullopt, lhs, rhs);
        return result;
      }
    }
  }
  return result;
}

PropertyCheck CheckMonotoneNormalized(const GainOracle& g,
                                      const ConstraintSpec& box) {
  BoxTable table(g, PropertyCaps(box));
  PropertyCheck result;
  ++result.checked;
  if (std::abs(table.value(0)) > kValueTolerance) {
    result.passed = false;
    result.witness = MakeWitness("normalized", table, 0, 0, std::nullopt,
                                 table.value(0), 0.0);
    return result;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t e = 0; e < table.dims(); ++e) {
      if (table.point(i)[e] >= table.cap(e)) continue;
      ++result.checked;
      const std::size_t up = i + table.step(e);
      if (table.value(i) > table.value(up) + kValueTolerance) {
        result.passed = false;
        result.witness = MakeWitness("monotone", table, i, up,
                                     static_cast<ElementId>(e), table.value(i),
                                     table.value(up));
        return result;
      }
    }
  }
  return result;
}

double EstimateAlpha(const GainOracle& g, const ConstraintSpec& box) {
  BoxTable table(g, PropertyCaps(box));
  double alpha = 1.0;
  for (std::size_t t = 0; t < table.size(); ++t) {
    const auto& tpt = table.point(t);
    table.ForEachBelow(t, [&](std::size_t s) {
      for (std::size_t e = 0; e < table.dims(); ++e) {
        if (tpt[e] >= table.cap(e)) continue;
        const double at_t = table.UnitMarginal(t, e);
        const double at_s = table.UnitMarginal(s, e);
        // Pairs within tolerance of a ratio >= 1 cannot bind.
        if (at_t <= kValueTolerance || at_s >= at_t - kValueTolerance) continue;
        alpha = std::min(alpha, at_s / at_t);
      }
      return true;
    });
  }
  return std::clamp(alpha, 0.0, 1.0);
}

bool GuaranteeReport::satisfied() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BoundCheck& c) { return c.satisfied; });
}

GuaranteeReport ValidateLemmaFull(const ProblemInstance& inst,
                                  const AlgoConfig& cfg,
                                  const ThresholdInstance& run) {
  if (run.x().total() != inst.constraint.k) {
    throw std::invalid_argument("ValidateLemmaFull requires x(E) = k");
  }
  GuaranteeReport report = BaseReport(inst, cfg, run);
  report.full = true;
  report.nu = 1.0;
  const auto [gain, cost] = ReplayLedger(inst, run, report);
  const double target = static_cast<double>(inst.constraint.k) * run.tau();
  report.objective = gain - cost;
  report.lemma_bound = target;
  const double scaled = gain - run.scale() * cost;
  report.checks.push_back(
      BoundCheck{"full.scaled_objective", scaled, target, scaled >= target - kValueTolerance});
  report.checks.push_back(BoundCheck{"full.objective", report.objective, target,
                                     report.objective >= target - kValueTolerance});
  report.theorem_ratios = WorstCaseRatios(cfg);
  return report;
}

GuaranteeReport ValidateLemmaPartial(const ProblemInstance& inst,
                                     const AlgoConfig& cfg,
                                     const ThresholdInstance& run,
                                     const OptimalSolution& opt) {
  const Count k = inst.constraint.k;
  if (run.x().total() >= k) {
    throw std::invalid_argument("ValidateLemmaPartial requires x(E) < k");
  }
  GuaranteeReport report = BaseReport(inst, cfg, run);
  report.full = false;
  const auto [gain, cost] = ReplayLedger(inst, run, report);
  report.objective = gain - cost;

  const LatticeVector missed = MultisetDiff(opt.x_star, run.x());
  double mu = static_cast<double>(missed.total()) / static_cast<double>(k);
  double nu = static_cast<double>(run.x().total()) / static_cast<double>(k);
  if (mu > 1.0 || nu > 1.0) {
    report.mu_nu_clamped = true;
    mu = std::min(mu, 1.0);
    nu = std::min(nu, 1.0);
  }
  report.mu = mu;
  report.nu = nu;

  const double opt_gain = inst.gain->Evaluate(opt.x_star);
  const double opt_cost = inst.cost.Evaluate(opt.x_star);
  const double k_tau = static_cast<double>(k) * run.tau();
  double bound = 0.0;
  if (cfg.mode == Mode::kSubmodular) {
    const double t = run.scale();
    bound = (t - 1.0) / t * opt_gain - (t - 1.0) * opt_cost +
            k_tau * (nu / t - (t - 1.0) / t * mu);
    report.theorem_ratios = TheoremRatios(cfg.mode, t, mu, nu).ratios;
  } else {
    const double alpha = cfg.alpha;
    bound = alpha / (1.0 + alpha) * opt_gain - opt_cost +
            k_tau * (nu - mu) / (1.0 + alpha);
    report.theorem_ratios = TheoremRatios(cfg.mode, alpha, mu, nu).ratios;
  }
  report.lemma_bound = bound;
  report.checks.push_back(BoundCheck{"partial.objective", report.objective, bound,
                                     report.objective >= bound - kValueTolerance});
  return report;
}

GuaranteeReport ValidateInstance(const ProblemInstance& inst,
                                 const AlgoConfig& cfg,
                                 const ThresholdInstance& run,
                                 const OptimalSolution& opt) {
  if (run.x().total() == inst.constraint.k) {
    return ValidateLemmaFull(inst, cfg, run);
  }
  return ValidateLemmaPartial(inst, cfg, run, opt);
}

bool VerificationSummary::all_satisfied() const {
  return optimum_dominates &&
         std::all_of(instances.begin(), instances.end(),
                     [](const GuaranteeReport& r) { return r.satisfied(); });
}

ConstraintSpec ArrivedConstraint(const ProblemInstance& inst) {
  ConstraintSpec constraint = inst.constraint;
  std::vector<bool> arrived(constraint.size(), false);
  for (ElementId e : inst.stream_order) {
    if (e < arrived.size()) arrived[e] = true;
  }
  for (std::size_t e = 0; e < constraint.size(); ++e) {
    if (!arrived[e]) constraint.box[e] = 0;
  }
  return constraint;
}

VerificationSummary VerifyRun(const ProblemInstance& inst,
                              const AlgoConfig& cfg,
                              const SolutionReport& report) {
  VerificationSummary summary;
  summary.opt = BruteForceOpt(inst, ArrivedConstraint(inst));
  for (const ThresholdInstance& instance : report.instances) {
    summary.instances.push_back(ValidateInstance(inst, cfg, instance, summary.opt));
  }
  summary.optimum_dominates =
      summary.opt.value >= report.objective - kValueTolerance;
  const double opt_gain = inst.gain->Evaluate(summary.opt.x_star);
  const double opt_cost = inst.cost.Evaluate(summary.opt.x_star);
  summary.reference_bound =
      report.ratios.rho_g * opt_gain - report.ratios.rho_c * opt_cost;
  return summary;
}

}  // namespace latstream
