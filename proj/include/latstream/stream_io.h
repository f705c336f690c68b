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

// JSON-lines stream files and canonical JSON run reports. Schemas are
// documented in docs/formats.md.

#ifndef LATSTREAM_STREAM_IO_H_
#define LATSTREAM_STREAM_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "latstream/config.h"
#include "latstream/oracle.h"
#include "latstream/sieve.h"
#include "latstream/verify.h"

namespace latstream {

// File-level view of an instance, before the oracle is built.
struct StreamSpec {
  std::vector<std::string> elements;
  std::vector<Count> box;    // kUnbounded when absent or null
  std::vector<double> costs;  // 0 when absent
  Count k = 0;
  // Either a string (path, relative to the stream file) or an inline object.
  nlohmann::json oracle;
  std::vector<ElementId> order;
};

// Parses a stream. Errors are InputError with the 1-based offending line.
StreamSpec ParseStream(std::istream& in);
StreamSpec ReadStreamFile(const std::filesystem::path& path);

void WriteStream(std::ostream& out, const StreamSpec& spec);

// Resolves the oracle (override path first, then the header's reference,
// relative to `base_dir`) and assembles a validated instance.
ProblemInstance BuildInstance(
    const StreamSpec& spec, const std::filesystem::path& base_dir,
    const std::optional<std::filesystem::path>& oracle_override = std::nullopt);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);

// Sorted keys, two-space indentation, every floating-point number printed
// with exactly nine decimals. Trailing newline included.
std::string CanonicalDump(const nlohmann::json& value);

nlohmann::json VectorToJson(const LatticeVector& x, const GroundSet& ground);
LatticeVector VectorFromJson(const nlohmann::json& value,
                             const GroundSet& ground);

nlohmann::json ConfigToJson(const AlgoConfig& cfg);
AlgoConfig ConfigFromJson(const nlohmann::json& value);

nlohmann::json ReportToJson(const ProblemInstance& inst,
                            const SolutionReport& report);
nlohmann::json VerificationToJson(const ProblemInstance& inst,
                                  const VerificationSummary& summary);

// Reconstructs the parts of a recorded report the validators need: config,
// objective, ratios and every instance ledger. Deltas are taken from the
// file; nothing is re-run.
SolutionReport ReportFromJson(const nlohmann::json& value,
                              const ProblemInstance& inst);

}  // namespace latstream

#endif  // LATSTREAM_STREAM_IO_H_
