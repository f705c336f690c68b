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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.
//
//   acceptance_test [--criterion N] [--archive PATH]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latstream/generator.h"
#include "latstream/ratios.h"
#include "latstream/sieve.h"
#include "latstream/stream_io.h"
#include "latstream/verify.h"

namespace {

using namespace latstream;
using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Criterion-1 corpus: coverage family, n in 2..5, b(e) <= 3, k in 1..6.
constexpr int kCoverageCorpus = 200;
constexpr int kBudgetCorpus = 50;

GeneratorParams CorpusParams(Family family, int index) {
  GeneratorParams params;
  params.family = family;
  params.n = 2 + static_cast<std::size_t>(index % 4);
  params.bmax = 3;
  params.k = 1 + static_cast<Count>((index / 4) % 6);
  params.seed = 1000 + static_cast<std::uint64_t>(index);
  return params;
}

ProblemInstance CorpusInstance(Family family, int index) {
  return BuildInstance(Generate(CorpusParams(family, index)), ".");
}

AlgoConfig SubmodularConfig() {
  AlgoConfig cfg;
  cfg.epsilon = 0.05;  // t = auto
  return cfg;
}

// Property box: caps min(b, k).
double AlphaFor(const ProblemInstance& inst) {
  return EstimateAlpha(*inst.gain, inst.constraint);
}

std::string FirstFailure(const VerificationSummary& summary) {
  if (!summary.optimum_dominates) return "output above brute-force optimum";
  for (const auto& r : summary.instances) {
    for (const auto& c : r.checks) {
      if (!c.satisfied) {
        std::ostringstream out;
        out << c.name << " (tau=" << r.tau << ", lhs=" << c.lhs << ", rhs=" << c.rhs
            << ", mu=" << r.mu << ", nu=" << r.nu << ")";
        return out.str();
      }
    }
  }
  return "";
}

struct SuiteTally {
  int instances = 0;
  int validated = 0;
  int full = 0;
  int violations = 0;
  std::string first;
};

void Tally(SuiteTally& tally, const ProblemInstance& inst, const AlgoConfig& cfg,
           const std::string& label) {
  const SolutionReport report = Run(inst, cfg);
  const VerificationSummary summary = VerifyRun(inst, cfg, report);
  ++tally.instances;
  tally.validated += static_cast<int>(summary.instances.size());
  for (const auto& r : summary.instances) tally.full += r.full ? 1 : 0;
  if (!summary.all_satisfied()) {
    ++tally.violations;
    if (tally.first.empty()) tally.first = label + ": " + FirstFailure(summary);
  }
}

Outcome Criterion1() {
  const auto start = std::chrono::steady_clock::now();
  SuiteTally tally;
  for (int i = 0; i < kCoverageCorpus; ++i) {
    Tally(tally, CorpusInstance(Family::kCoverage, i), SubmodularConfig(),
          "coverage#" + std::to_string(i));
  }
  const double elapsed = Seconds(start);
  std::ostringstream detail;
  detail << tally.instances << " instances, " << tally.validated
         << " live thresholds validated (" << tally.full << " full, "
         << tally.validated - tally.full << " partial), " << tally.violations
         << " violations, " << elapsed << " s";
  if (!tally.first.empty()) detail << "; first: " << tally.first;
  return {tally.violations == 0 && elapsed < 30.0, detail.str()};
}

Outcome Criterion2() {
  const auto start = std::chrono::steady_clock::now();
  SuiteTally tally;
  int skipped = 0;
  double min_alpha = 1.0;
  auto run = [&](Family family, int i) {
    const ProblemInstance inst = CorpusInstance(family, i);
    AlgoConfig cfg;
    cfg.mode = Mode::kAlphaWeak;
    cfg.epsilon = 0.05;
    cfg.alpha = AlphaFor(inst);
    min_alpha = std::min(min_alpha, cfg.alpha);
    if (!(cfg.alpha > 0.0)) {
      ++skipped;
      return;
    }
    Tally(tally, inst, cfg, ToString(family) + "#" + std::to_string(i));
  };
  for (int i = 0; i < kCoverageCorpus; ++i) run(Family::kCoverage, i);
  for (int i = 0; i < kBudgetCorpus; ++i) run(Family::kBudget, i);
  std::ostringstream detail;
  detail << tally.instances << " instances (" << kBudgetCorpus
         << " budget), min estimated alpha " << min_alpha << ", " << tally.validated
         << " live thresholds validated, " << tally.violations << " violations, "
         << skipped << " with alpha = 0, " << Seconds(start) << " s";
  if (!tally.first.empty()) detail << "; first: " << tally.first;
  return {tally.violations == 0 && skipped == 0, detail.str()};
}

// Level-search grid shared by criteria 3 and 4.
struct GridResult {
  int oracles = 0;
  long searches = 0;
  long mismatches = 0;
  long call_violations = 0;
  std::uint64_t worst_calls = 0;
  std::string first;
};

const std::vector<double>& TauLattice() {
  static const std::vector<double> taus{-0.5, 0.0,  0.01, 0.02, 0.05, 0.08, 0.1,
                                        0.15, 0.2,  0.25, 0.3,  0.4,  0.5,  0.6,
                                        0.75, 0.9,  1.0,  1.25, 1.5,  2.0};
  return taus;
}

Count CallBound(Count ceiling) {
  Count bits = 0;
  while ((Count{1} << bits) < ceiling + 1) ++bits;  // ceil(log2(L + 1))
  return 2 * bits + 4;
}

GridResult LevelGrid() {
  GridResult result;
  for (Family family : {Family::kCoverage, Family::kBudget}) {
    for (int seed = 0; seed < 10; ++seed) {
      GeneratorParams params;
      params.family = family;
      params.n = 1 + static_cast<std::size_t>(seed % 3);
      params.bmax = 6;
      params.k = 12;
      params.seed = 500 + static_cast<std::uint64_t>(seed);
      const ProblemInstance inst = BuildInstance(Generate(params), ".");
      if (!CheckDr(*inst.gain, inst.constraint).passed) continue;
      ++result.oracles;
      AlgoConfig binary;
      binary.level_search = LevelSearch::kBinary;
      AlgoConfig linear = binary;
      linear.level_search = LevelSearch::kLinearScan;
      const std::vector<Count> caps = PropertyCaps(inst.constraint);
      ForEachInBox(caps, [&](const std::vector<Count>& counts) {
        const LatticeVector x = LatticeVector::FromDense(counts);
        if (x.total() > inst.constraint.k) return true;
        for (ElementId e = 0; e < caps.size(); ++e) {
          const Count ceiling = LevelCeiling(inst, x, e);
          for (double tau : TauLattice()) {
            const std::uint64_t before = inst.gain->calls();
            const Count fast = BsLevel(inst, binary, x, e, tau);
            const std::uint64_t calls = inst.gain->calls() - before;
            const Count slow = BsLevel(inst, linear, x, e, tau);
            ++result.searches;
            result.worst_calls = std::max(result.worst_calls, calls);
            if (fast != slow) {
              ++result.mismatches;
              if (result.first.empty()) {
                result.first = "x=" + ToString(x) + " e=" + std::to_string(e) +
                               " tau=" + std::to_string(tau);
              }
            }
            if (calls > CallBound(ceiling)) ++result.call_violations;
          }
        }
        return true;
      });
    }
  }
  return result;
}

const GridResult& Grid() {
  static const GridResult grid = LevelGrid();
  return grid;
}

Outcome Criterion3() {
  const GridResult& grid = Grid();
  std::ostringstream detail;
  detail << grid.oracles << " DR oracles, " << grid.searches << " searches, "
         << grid.mismatches << " binary/linear mismatches";
  if (!grid.first.empty()) detail << "; first: " << grid.first;
  return {grid.mismatches == 0 && grid.oracles > 0, detail.str()};
}

Outcome Criterion4() {
  const GridResult& grid = Grid();
  // Also the per-step counts recorded during criterion-1 style runs.
  long steps = 0;
  long step_violations = 0;
  for (int i = 0; i < kCoverageCorpus; ++i) {
    const ProblemInstance inst = CorpusInstance(Family::kCoverage, i);
    const SolutionReport report = Run(inst, SubmodularConfig());
    for (const ThresholdInstance& instance : report.instances) {
      for (const StepRecord& step : instance.steps()) {
        ++steps;
        if (step.oracle_calls > CallBound(step.ceiling)) ++step_violations;
      }
    }
  }
  std::ostringstream detail;
  detail << grid.searches << " grid searches (max " << grid.worst_calls
         << " calls), " << grid.call_violations << " over 2*ceil(log2(L+1))+4; "
         << steps << " recorded stream steps, " << step_violations << " over";
  return {grid.call_violations == 0 && step_violations == 0, detail.str()};
}

// Smallest j with (1 + eps)^j >= span, plus 2.
std::size_t IndependentLiveBound(double span, double eps) {
  std::size_t j = 0;
  while (std::pow(1.0 + eps, static_cast<double>(j)) < span * (1.0 - 1e-12)) ++j;
  return j + 2;
}

Outcome Criterion5() {
  long runs = 0;
  long live_violations = 0;
  long total_violations = 0;
  std::size_t worst_slack = 1000;
  auto check = [&](const ProblemInstance& inst, const AlgoConfig& cfg) {
    const SolutionReport report = Run(inst, cfg);
    const double span = cfg.mode == Mode::kSubmodular
                            ? static_cast<double>(inst.constraint.k)
                            : static_cast<double>(inst.constraint.k) / cfg.alpha;
    const std::size_t bound = IndependentLiveBound(span, cfg.epsilon);
    ++runs;
    if (report.peak_live > bound) ++live_violations;
    worst_slack = std::min(worst_slack, bound - std::min(bound, report.peak_live));
    for (const ThresholdInstance& instance : report.instances) {
      if (instance.x().total() > inst.constraint.k) ++total_violations;
    }
  };
  for (int i = 0; i < kCoverageCorpus; ++i) {
    const ProblemInstance inst = CorpusInstance(Family::kCoverage, i);
    check(inst, SubmodularConfig());
    AlgoConfig alpha;
    alpha.mode = Mode::kAlphaWeak;
    alpha.epsilon = 0.05;
    alpha.alpha = AlphaFor(inst);
    check(inst, alpha);
  }
  for (int i = 0; i < kBudgetCorpus; ++i) {
    const ProblemInstance inst = CorpusInstance(Family::kBudget, i);
    AlgoConfig alpha;
    alpha.mode = Mode::kAlphaWeak;
    alpha.epsilon = 0.05;
    alpha.alpha = AlphaFor(inst);
    check(inst, alpha);
  }
  std::ostringstream detail;
  detail << runs << " runs, " << live_violations << " over the live-instance bound (min slack "
         << worst_slack << "), " << total_violations << " instances storing more than k";
  return {live_violations == 0 && total_violations == 0, detail.str()};
}

Outcome Criterion6() {
  int strict_failures = 0;
  int balance_failures = 0;
  std::string first_strict, first_balance;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double mu = i / 10.0, nu = j / 10.0;
      const TheoremCoefficients r = TheoremRatios(Mode::kSubmodular, std::nullopt, mu, nu);
      // t1 > 1 + mu  <=>  delta > mu^2; in hundredths both sides are exact
      // integers: i^2 + 400 - 40 j > i^2.
      const bool strict_exact = i * i + 400 - 40 * j > i * i;
      if (!strict_exact || !r.root_above_one_plus_mu) {
        ++strict_failures;
        if (first_strict.empty()) {
          std::ostringstream s;
          s << "(mu,nu)=(" << mu << "," << nu << ") t1=" << *r.t1;
          first_strict = s.str();
        }
      }
      if (!(std::abs(r.ratios.rho_c - 1.0) <= 1e-9)) {
        ++balance_failures;
        if (first_balance.empty()) {
          std::ostringstream s;
          s << "(mu,nu)=(" << mu << "," << nu << ") rho_c=" << r.ratios.rho_c;
          first_balance = s.str();
        }
      }
    }
  }
  const auto worst = TheoremRatios(Mode::kSubmodular, std::nullopt, 1.0, 0.0).ratios;
  const bool worst_ok = std::abs(worst.rho_g - 0.3819660113) <= 1e-9 &&
                        std::abs(worst.rho_c - 1.0) <= 1e-9;
  const auto alpha = TheoremRatios(Mode::kAlphaWeak, 1.0, 1.0, 0.0).ratios;
  const bool alpha_ok = std::abs(alpha.rho_g - 1.0 / 3.0) <= 1e-9 &&
                        std::abs(alpha.rho_c - 2.0 / 3.0) <= 1e-9;
  char pair[160];
  std::snprintf(pair, sizeof(pair), "(%.10f, %.10f) and (%.10f, %.10f)", worst.rho_g,
                worst.rho_c, alpha.rho_g, alpha.rho_c);
  std::ostringstream detail;
  detail << "121 grid points: t1 > 1+mu fails at " << strict_failures;
  if (!first_strict.empty()) detail << " (first " << first_strict << "; nu = 1 gives t1 = 1+mu)";
  detail << ", rho_c(t1) = 1 fails at " << balance_failures;
  if (!first_balance.empty()) detail << " (first " << first_balance << ")";
  detail << "; pairs " << pair << (worst_ok && alpha_ok ? " match" : " MISMATCH");
  return {strict_failures == 0 && balance_failures == 0 && worst_ok && alpha_ok,
          detail.str()};
}

Outcome Criterion7() {
  const auto start = std::chrono::steady_clock::now();
  int coverage_fail = 0, adversarial_pass = 0, budget_fail = 0, alpha_off = 0;
  int dr_passing = 0, witnesses = 0;
  for (int seed = 0; seed < 20; ++seed) {
    GeneratorParams params;
    params.n = 2 + static_cast<std::size_t>(seed % 3);
    params.bmax = 3;
    params.k = 12;  // caps = b
    params.seed = 700 + static_cast<std::uint64_t>(seed);
    for (Family family : {Family::kCoverage, Family::kBudget, Family::kAdversarial}) {
      params.family = family;
      const ProblemInstance inst = BuildInstance(Generate(params), ".");
      const PropertyCheck dr = CheckDr(*inst.gain, inst.constraint);
      if (dr.passed) {
        ++dr_passing;
        if (EstimateAlpha(*inst.gain, inst.constraint) != 1.0) ++alpha_off;
      }
      switch (family) {
        case Family::kCoverage:
          if (!dr.passed) ++coverage_fail;
          break;
        case Family::kBudget:
          if (!CheckLatticeSubmodular(*inst.gain, inst.constraint).passed) ++budget_fail;
          break;
        case Family::kAdversarial:
          if (dr.passed) {
            ++adversarial_pass;
          } else if (dr.witness && dr.witness->lhs > dr.witness->rhs &&
                     LessEq(dr.witness->x, dr.witness->y) && dr.witness->element) {
            ++witnesses;
          }
          break;
      }
    }
  }
  const double elapsed = Seconds(start);
  std::ostringstream detail;
  detail << "coverage DR failures " << coverage_fail << "/20, adversarial DR passes "
         << adversarial_pass << "/20 (" << witnesses << " concrete witnesses), budget lattice failures "
         << budget_fail << "/20, alpha != 1 on " << alpha_off << "/" << dr_passing
         << " DR-passing oracles, " << elapsed << " s";
  return {coverage_fail == 0 && adversarial_pass == 0 && witnesses == 20 &&
              budget_fail == 0 && alpha_off == 0 && elapsed < 10.0,
          detail.str()};
}

Outcome Criterion8(const std::string& archive) {
  json rows = json::array();
  int at_least = 0;
  double min_gap = 1e300, max_gap = -1e300;
  std::vector<double> ratios;
  for (int i = 0; i < kCoverageCorpus; ++i) {
    const ProblemInstance inst = CorpusInstance(Family::kCoverage, i);
    const AlgoConfig cfg = SubmodularConfig();
    const SolutionReport report = Run(inst, cfg);
    const VerificationSummary summary = VerifyRun(inst, cfg, report);
    const double gap = report.objective - summary.reference_bound;
    at_least += gap >= -1e-9 ? 1 : 0;
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
    if (summary.opt.value > 1e-9) ratios.push_back(report.objective / summary.opt.value);
    rows.push_back({{"index", i},
                    {"seed", CorpusParams(Family::kCoverage, i).seed},
                    {"n", inst.ground.size()},
                    {"k", inst.constraint.k},
                    {"objective", report.objective},
                    {"opt", summary.opt.value},
                    {"opt_gain", inst.gain->Evaluate(summary.opt.x_star)},
                    {"opt_cost", inst.cost.Evaluate(summary.opt.x_star)},
                    {"reference_bound", summary.reference_bound},
                    {"gap", gap}});
  }
  std::sort(ratios.begin(), ratios.end());
  const auto quantile = [&](double q) {
    return ratios.empty() ? 0.0 : ratios[static_cast<std::size_t>(q * (ratios.size() - 1))];
  };
  const RatioPair worst = WorstCaseRatios(SubmodularConfig());
  json doc = {{"description",
               "objective of the streaming output versus rho_g g(x*) - rho_c c(x*) at "
               "worst-case coefficients; threshold window built from the running "
               "maximum net singleton value"},
              {"rho_g", worst.rho_g},
              {"rho_c", worst.rho_c},
              {"epsilon", 0.05},
              {"instances", rows},
              {"summary",
               {{"count", rows.size()},
                {"at_or_above_reference", at_least},
                {"min_gap", min_gap},
                {"max_gap", max_gap},
                {"objective_over_opt_min", quantile(0.0)},
                {"objective_over_opt_median", quantile(0.5)},
                {"objective_over_opt_max", quantile(1.0)}}}};
  std::filesystem::create_directories(std::filesystem::path(archive).parent_path());
  std::ofstream(archive, std::ios::binary) << CanonicalDump(doc);
  std::ostringstream detail;
  detail << "observational: " << at_least << "/" << rows.size()
         << " outputs at or above the reference bound, gap range [" << min_gap << ", "
         << max_gap << "], objective/opt median " << quantile(0.5) << "; archived to "
         << archive;
  return {std::filesystem::exists(archive), detail.str()};
}

Outcome Criterion9() {
  int identical = 0;
  for (int i = 0; i < 10; ++i) {
    std::string dumps[2];
    for (std::string& dump : dumps) {
      // Fresh instance each time: nothing is shared between the two runs.
      const ProblemInstance inst = CorpusInstance(Family::kCoverage, i);
      const AlgoConfig cfg = SubmodularConfig();
      const SolutionReport report = Run(inst, cfg);
      json doc = ReportToJson(inst, report);
      doc["verification"] = VerificationToJson(inst, VerifyRun(inst, cfg, report));
      dump = CanonicalDump(doc);
    }
    identical += dumps[0] == dumps[1] ? 1 : 0;
  }
  return {identical == 10, std::to_string(identical) + "/10 reports byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string archive = "acceptance/ratio_report.json";
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--archive", archive, "criterion 8 report path");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"per-instance bounds, submodular mode", Criterion1},
      {"per-instance bounds, alpha mode", Criterion2},
      {"binary vs linear level search", Criterion3},
      {"oracle calls per element", Criterion4},
      {"live instances and stored total", Criterion5},
      {"coefficient identities", Criterion6},
      {"property checkers", Criterion7},
      {"empirical ratio report", [&] { return Criterion8(archive); }},
      {"determinism", Criterion9},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    all = all && outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << outcome.detail << std::endl;
  }
  return all ? 0 : 1;
}
