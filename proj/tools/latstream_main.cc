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

// latstream: run / gen / verify front end.
//
// Exit codes: 0 ok, 1 guarantee violation, 2 input error, 3 too large.
// Every failure writes one JSON line to stderr.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "latstream/errors.h"
#include "latstream/generator.h"
#include "latstream/sieve.h"
#include "latstream/stream_io.h"
#include "latstream/verify.h"

namespace {

namespace fs = std::filesystem;
using latstream::AlgoConfig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitTooLarge = 3;

struct AlgoFlags {
  std::string input;
  std::string oracle;
  std::string mode = "submodular";
  std::string t = "auto";
  double alpha = 1.0;
  double epsilon = 0.1;
  std::string level_search;
  bool verify = false;
  std::string out;
  std::string report;
  std::uint64_t seed = 0;
};

struct GenFlags {
  std::string family = "coverage";
  std::size_t n = 5;
  latstream::Count bmax = 3;
  latstream::Count k = 6;
  std::uint64_t seed = 0;
  std::string out;
};

int ReportError(const std::string& kind, const std::string& message, int code,
                std::size_t line = 0) {
  json record = {{"error", kind}, {"message", message}, {"exit", code}};
  if (line > 0) record["line"] = line;
  std::cerr << record.dump() << std::endl;
  return code;
}

AlgoConfig ConfigFromFlags(const AlgoFlags& flags) {
  AlgoConfig cfg;
  cfg.mode = flags.mode == "alpha" ? latstream::Mode::kAlphaWeak
                                   : latstream::Mode::kSubmodular;
  if (flags.t != "auto") {
    try {
      std::size_t used = 0;
      cfg.t = std::stod(flags.t, &used);
      if (used != flags.t.size()) throw std::invalid_argument(flags.t);
    } catch (const std::logic_error&) {
      throw latstream::InputError("config", "--t must be 'auto' or a number");
    }
  }
  cfg.alpha = flags.alpha;
  cfg.epsilon = flags.epsilon;
  if (flags.level_search == "binary") {
    cfg.level_search = latstream::LevelSearch::kBinary;
  } else if (flags.level_search == "linear") {
    cfg.level_search = latstream::LevelSearch::kLinearScan;
  }
  cfg.Validate();
  return cfg;
}

latstream::ProblemInstance LoadInstance(const AlgoFlags& flags) {
  const fs::path input(flags.input);
  const latstream::StreamSpec spec = latstream::ReadStreamFile(input);
  std::optional<fs::path> oracle;
  if (!flags.oracle.empty()) oracle = fs::path(flags.oracle);
  return latstream::BuildInstance(spec, input.parent_path(), oracle);
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw latstream::InputError("format", "cannot write " + path);
  out << text;
}

// Wall-clock time lives next to the report so the report stays canonical.
void WriteTiming(const std::string& out, double seconds) {
  if (out.empty() || out == "-") return;
  json timing = {{"wall_seconds", seconds}};
  std::ofstream(out + ".timing.json") << timing.dump() << "\n";
}

int CmdRun(const AlgoFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const AlgoConfig cfg = ConfigFromFlags(flags);
  const latstream::ProblemInstance inst = LoadInstance(flags);
  const latstream::SolutionReport report = latstream::Run(inst, cfg);
  json doc = latstream::ReportToJson(inst, report);
  int code = kExitOk;
  if (flags.verify) {
    const auto summary = latstream::VerifyRun(inst, cfg, report);
    doc["verification"] = latstream::VerificationToJson(inst, summary);
    if (!summary.all_satisfied()) code = kExitViolation;
  }
  WriteText(flags.out, latstream::CanonicalDump(doc));
  WriteTiming(flags.out, std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start).count());
  if (code == kExitViolation) {
    return ReportError("violation", "a per-instance guarantee check failed", code);
  }
  return code;
}

int CmdVerify(const AlgoFlags& flags) {
  const latstream::ProblemInstance inst = LoadInstance(flags);
  latstream::SolutionReport report;
  AlgoConfig cfg;
  if (!flags.report.empty()) {
    report = latstream::ReportFromJson(latstream::ReadJsonFile(flags.report), inst);
    cfg = report.config;
  } else {
    cfg = ConfigFromFlags(flags);
    report = latstream::Run(inst, cfg);
  }
  const auto summary = latstream::VerifyRun(inst, cfg, report);
  json doc;
  doc["config"] = latstream::ConfigToJson(cfg);
  doc["objective"] = report.objective;
  doc["verification"] = latstream::VerificationToJson(inst, summary);
  if (!flags.out.empty()) WriteText(flags.out, latstream::CanonicalDump(doc));
  if (!summary.all_satisfied()) {
    std::string failed;
    for (const auto& r : summary.instances) {
      for (const auto& c : r.checks) {
        if (!c.satisfied && failed.empty()) {
          failed = c.name + " at exponent " + std::to_string(r.exponent);
        }
      }
    }
    if (failed.empty()) failed = "output exceeds the brute-force optimum";
    return ReportError("violation", failed, kExitViolation);
  }
  if (flags.out.empty()) {
    std::cout << json{{"status", "ok"},
                      {"instances", summary.instances.size()},
                      {"opt", summary.opt.value}}
                     .dump()
              << "\n";
  }
  return kExitOk;
}

int CmdGen(const GenFlags& flags) {
  latstream::GeneratorParams params;
  params.family = latstream::ParseFamily(flags.family);
  params.n = flags.n;
  params.bmax = flags.bmax;
  params.k = flags.k;
  params.seed = flags.seed;
  latstream::StreamSpec spec = latstream::Generate(params);
  if (flags.out.empty() || flags.out == "-") {
    latstream::WriteStream(std::cout, spec);
    return kExitOk;
  }
  // Paired files: <out> references <out-stem>.oracle.json next to it.
  const fs::path out(flags.out);
  const fs::path oracle_path =
      out.parent_path() / (out.stem().string() + ".oracle.json");
  WriteText(oracle_path.string(), latstream::CanonicalDump(spec.oracle));
  spec.oracle = oracle_path.filename().string();
  std::ofstream stream(out, std::ios::binary);
  if (!stream) throw latstream::InputError("format", "cannot write " + flags.out);
  latstream::WriteStream(stream, spec);
  return kExitOk;
}

void AddAlgoFlags(CLI::App* cmd, AlgoFlags& flags, bool input_required) {
  auto* input = cmd->add_option("--input", flags.input, "JSON-lines stream file");
  if (input_required) input->required();
  cmd->add_option("--oracle", flags.oracle, "oracle spec file (overrides the header)");
  cmd->add_option("--mode", flags.mode, "submodular | alpha")
      ->check(CLI::IsMember({"submodular", "alpha"}));
  cmd->add_option("--t", flags.t, "cost multiplier t, or 'auto'");
  cmd->add_option("--alpha", flags.alpha, "weak-submodularity ratio in (0, 1]");
  cmd->add_option("--epsilon", flags.epsilon, "threshold grid ratio in (0, 1)");
  cmd->add_option("--level-search", flags.level_search, "binary | linear")
      ->check(CLI::IsMember({"binary", "linear"}));
  cmd->add_option("--out", flags.out, "output file (default stdout)");
  cmd->add_option("--seed", flags.seed, "accepted for uniformity; the run is deterministic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming lattice maximization of g(x) - c(x)"};
  app.require_subcommand(1);

  AlgoFlags run_flags;
  auto* run = app.add_subcommand("run", "run the threshold sieve over a stream");
  AddAlgoFlags(run, run_flags, true);
  run->add_flag("--verify", run_flags.verify, "brute-force and validate every instance");

  AlgoFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run, brute-force and validate");
  AddAlgoFlags(verify, verify_flags, true);
  verify->add_option("--report", verify_flags.report,
                     "validate the ledgers of a recorded report instead of running");

  GenFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  gen->add_option("--family", gen_flags.family, "coverage | budget | adversarial")
      ->check(CLI::IsMember({"coverage", "budget", "adversarial"}));
  gen->add_option("--n", gen_flags.n, "number of elements");
  gen->add_option("--bmax", gen_flags.bmax, "largest box entry");
  gen->add_option("--k", gen_flags.k, "cardinality budget");
  gen->add_option("--seed", gen_flags.seed, "generator seed");
  gen->add_option("--out", gen_flags.out, "stream file; the oracle goes next to it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError("usage", e.what(), kExitInput);
  }

  try {
    if (run->parsed()) return CmdRun(run_flags);
    if (verify->parsed()) return CmdVerify(verify_flags);
    return CmdGen(gen_flags);
  } catch (const latstream::InputError& e) {
    return ReportError(e.category(), e.what(), kExitInput, e.line());
  } catch (const latstream::TooLargeError& e) {
    return ReportError("too-large", e.what(), kExitTooLarge);
  } catch (const latstream::Error& e) {
    return ReportError("input", e.what(), kExitInput);
  } catch (const std::logic_error& e) {
    return ReportError("violation", e.what(), kExitViolation);
  } catch (const std::exception& e) {
    return ReportError("internal", e.what(), kExitInput);
  }
}
