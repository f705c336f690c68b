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

#include "latstream/sieve.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "latstream/errors.h"

namespace latstream {
namespace {

// Slack on exponent arithmetic so that exact powers of (1 + eps) sitting on
// a window edge are counted inside.
constexpr double kExponentSlack = 1e-9;

// Evaluates per-unit acceptance values for one (x, e) pair, caching g(x)
// and every probed g(x + l chi_e).
class LevelProbe {
 public:
  LevelProbe(const ProblemInstance& inst, double scale, const LatticeVector& x,
             ElementId e, std::optional<double> base_value)
      : inst_(inst), scale_(scale), x_(x), e_(e), base_value_(base_value) {}

  double Value(Count l) {
    return (Gain(l) - BaseValue() - scale_ * inst_.cost.Unit(e_) * static_cast<double>(l)) /
           static_cast<double>(l);
  }

  bool Passes(Count l, double tau) { return Value(l) >= tau; }

  double BaseValue() {
    if (!base_value_) base_value_ = inst_.gain->Evaluate(x_);
    return *base_value_;
  }

  double Gain(Count l) {
    auto it = probed_.find(l);
    if (it != probed_.end()) return it->second;
    const double value = inst_.gain->Evaluate(AddScaled(x_, e_, l));
    probed_.emplace(l, value);
    return value;
  }

 private:
  const ProblemInstance& inst_;
  double scale_;
  const LatticeVector& x_;
  ElementId e_;
  std::optional<double> base_value_;
  std::map<Count, double> probed_;
};

Count FindLevel(LevelProbe& probe, Count ceiling, double tau,
                LevelSearch search) {
  if (ceiling == 0) return 0;
  // Acceptance compares the computed value against tau exactly; the
  // validators carry the 1e-9 tolerance instead, so that per-unit slack
  // cannot accumulate over k accepted units.
  if (!probe.Passes(1, tau)) return 0;
  if (ceiling == 1) return 1;
  if (probe.Passes(ceiling, tau)) return ceiling;
  if (search == LevelSearch::kBinary) {
    // Invariant: lo passes, hi fails.
    Count lo = 1;
    Count hi = ceiling;
    while (hi - lo > 1) {
      const Count mid = lo + (hi - lo) / 2;
      if (probe.Passes(mid, tau)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }
  for (Count l = ceiling - 1; l > 1; --l) {
    if (probe.Passes(l, tau)) return l;
  }
  return 1;
}

}  // namespace

double AcceptanceValue(const ProblemInstance& inst, const AlgoConfig& cfg,
                       const LatticeVector& x, ElementId e, Count l) {
  if (l == 0) throw std::invalid_argument("AcceptanceValue: level must be >= 1");
  LevelProbe probe(inst, cfg.Scale(), x, e, std::nullopt);
  return probe.Value(l);
}

Count LevelCeiling(const ProblemInstance& inst, const LatticeVector& x,
                   ElementId e) {
  const Count k = inst.constraint.k;
  const Count used = x.total();
  if (used >= k) return 0;
  const Count budget_room = k - used;
  const Count box = inst.constraint.Box(e);
  if (box == kUnbounded) return budget_room;
  const Count have = x[e];
  if (have >= box) return 0;
  return std::min(box - have, budget_room);
}

Count BsLevel(const ProblemInstance& inst, const AlgoConfig& cfg,
              const LatticeVector& x, ElementId e, double tau) {
  LevelProbe probe(inst, cfg.Scale(), x, e, std::nullopt);
  return FindLevel(probe, LevelCeiling(inst, x, e), tau,
                   cfg.ResolvedLevelSearch());
}

ThresholdInstance::ThresholdInstance(int exponent, double tau, double scale)
    : exponent_(exponent), tau_(tau), scale_(scale) {}

ThresholdInstance ThresholdInstance::FromLedger(int exponent, double tau,
                                                double scale,
                                                std::vector<LedgerEntry> ledger) {
  ThresholdInstance instance(exponent, tau, scale);
  for (const LedgerEntry& entry : ledger) {
    instance.x_.Add(entry.element, entry.level);
    instance.gain_ += entry.gain_delta;
    instance.cost_ += entry.cost_delta;
  }
  instance.ledger_ = std::move(ledger);
  return instance;
}

StepRecord ThresholdInstance::Step(const ProblemInstance& inst,
                                   const AlgoConfig& cfg, ElementId e) {
  StepRecord record;
  record.element = e;
  record.ceiling = LevelCeiling(inst, x_, e);
  if (record.ceiling > 0) {
    const std::uint64_t calls_before = inst.gain->calls();
    LevelProbe probe(inst, scale_, x_, e, base_value_);
    record.level = FindLevel(probe, record.ceiling, tau_,
                             cfg.ResolvedLevelSearch());
    const double base = probe.BaseValue();
    base_value_ = base;
    if (record.level > 0) {
      if (x_.total() + record.level > inst.constraint.k) {
        throw std::logic_error("level search exceeded the cardinality budget");
      }
      LedgerEntry entry;
      entry.element = e;
      entry.level = record.level;
      const double after = probe.Gain(record.level);
      entry.gain_delta = after - base;
      entry.cost_delta = inst.cost.Unit(e) * static_cast<double>(record.level);
      x_.Add(e, record.level);
      gain_ += entry.gain_delta;
      cost_ += entry.cost_delta;
      base_value_ = after;
      ledger_.push_back(entry);
    }
    record.oracle_calls = inst.gain->calls() - calls_before;
  }
  oracle_calls_ += record.oracle_calls;
  max_step_calls_ = std::max(max_step_calls_, record.oracle_calls);
  steps_.push_back(record);
  return record;
}

double ThresholdInstance::LedgerSurplus() const {
  double net = 0.0;
  for (const LedgerEntry& entry : ledger_) {
    net += entry.gain_delta - scale_ * entry.cost_delta;
  }
  return net - tau_ * static_cast<double>(x_.total());
}

std::optional<Window> GridWindow(double m, Count k, const AlgoConfig& cfg) {
  if (!(m > 0.0) || k == 0) return std::nullopt;
  Window window;
  window.lo = m / static_cast<double>(k);
  window.hi = cfg.mode == Mode::kSubmodular ? m : m / cfg.alpha;
  return window;
}

std::size_t LiveInstanceBound(Count k, const AlgoConfig& cfg) {
  if (k == 0) return 0;
  double span = static_cast<double>(k);
  if (cfg.mode == Mode::kAlphaWeak) span /= cfg.alpha;
  const double levels = std::log(span) / std::log1p(cfg.epsilon);
  return static_cast<std::size_t>(std::ceil(levels - kExponentSlack)) + 2;
}

SieveState::SieveState(const ProblemInstance& inst, AlgoConfig cfg)
    : inst_(inst), cfg_(std::move(cfg)), log_base_(std::log1p(cfg_.epsilon)) {}

void SieveState::Step(ElementId e) {
  ++elements_;
  const double scale = cfg_.Scale();
  if (inst_.constraint.Cap(e) >= 1) {
    LatticeVector unit;
    unit.Add(e, 1);
    const double net = inst_.gain->Evaluate(unit) - scale * inst_.cost.Unit(e);
    m_ = std::max(m_, net);
  }

  if (auto window = GridWindow(m_, inst_.constraint.k, cfg_)) {
    const int lo_exp = static_cast<int>(
        std::ceil(std::log(window->lo) / log_base_ - kExponentSlack));
    const int hi_exp = static_cast<int>(
        std::floor(std::log(window->hi) / log_base_ + kExponentSlack));
    int first = lo_exp;
    if (top_spawned_) first = std::max(first, *top_spawned_ + 1);
    for (int j = first; j <= hi_exp; ++j) {
      live_.emplace(j, ThresholdInstance(j, std::pow(1.0 + cfg_.epsilon, j), scale));
      ++spawned_;
    }
    if (!top_spawned_ || hi_exp > *top_spawned_) top_spawned_ = hi_exp;

    // Keep tau >= lo / (1 + eps), i.e. exponent >= log(lo) - 1.
    const double keep_from = std::log(window->lo) / log_base_ - 1.0 - kExponentSlack;
    for (auto it = live_.begin(); it != live_.end() && it->first < keep_from;) {
      it = live_.erase(it);
      ++dropped_;
    }
  }
  peak_live_ = std::max(peak_live_, live_.size());

  for (auto& [j, instance] : live_) {
    const StepRecord record = instance.Step(inst_, cfg_, e);
    max_step_calls_ = std::max(max_step_calls_, record.oracle_calls);
  }
}

SolutionReport Run(const ProblemInstance& inst, const AlgoConfig& cfg) {
  cfg.Validate();
  inst.Validate();

  SolutionReport report;
  report.config = cfg;
  report.scale = cfg.Scale();
  report.level_search = cfg.ResolvedLevelSearch();
  report.ratios = WorstCaseRatios(cfg);
  report.live_bound = LiveInstanceBound(inst.constraint.k, cfg);

  const std::uint64_t calls_before = inst.gain->calls();
  SieveState state(inst, cfg);
  for (ElementId e : inst.stream_order) state.Step(e);

  report.singleton_max = state.singleton_max();
  report.elements = state.elements();
  report.peak_live = state.peak_live();
  report.spawned = state.spawned();
  report.dropped = state.dropped();
  report.max_step_calls = state.max_step_calls();

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [j, instance] : state.live()) {
    if (instance.LedgerSurplus() < -kValueTolerance) {
      throw std::logic_error("acceptance ledger below tau * x(E) for tau = " +
                             std::to_string(instance.tau()));
    }
    const double gain = inst.gain->Evaluate(instance.x());
    const double cost = inst.cost.Evaluate(instance.x());
    if (gain - cost > best) {
      best = gain - cost;
      report.chosen_exponent = j;
      report.chosen_tau = instance.tau();
      report.x = instance.x();
      report.gain = gain;
      report.cost = cost;
      report.objective = gain - cost;
    }
    report.instances.push_back(instance);
  }
  report.oracle_calls = inst.gain->calls() - calls_before;
  return report;
}

}  // namespace latstream
