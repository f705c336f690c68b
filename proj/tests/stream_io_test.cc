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

#include <sstream>

#include <gtest/gtest.h>

#include "latstream/errors.h"
#include "latstream/generator.h"
#include "latstream/stream_io.h"
#include "latstream/verify.h"
#include "test_util.h"

namespace latstream {
namespace {

using nlohmann::json;

constexpr const char* kHeader =
    R"({"type":"header","elements":["a","b"],"box":{"a":2,"b":null},)"
    R"("costs":{"a":0.1,"b":0.2},"k":3,)"
    R"("oracle":{"kind":"coverage","weights":[1,1],"incidence":[[1,0],[0,1]],)"
    R"("phi":[{"type":"capped","cap":2},{"type":"capped","cap":2}]}})";

StreamSpec Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseStream(in);
}

// Returns (category, line) of the InputError raised while parsing.
std::pair<std::string, std::size_t> ParseFailure(const std::string& text) {
  try {
    Parse(text);
  } catch (const InputError& e) {
    return {e.category(), e.line()};
  }
  return {"", 0};
}

TEST(StreamParseTest, HeaderAndBody) {
  const StreamSpec spec = Parse(std::string(kHeader) +
                                "\n{\"type\":\"arrive\",\"e\":\"b\"}\n\n"
                                "{\"type\":\"arrive\",\"e\":\"a\"}\n");
  EXPECT_EQ(spec.elements, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(spec.box, (std::vector<Count>{2, kUnbounded}));
  EXPECT_EQ(spec.k, 3u);
  EXPECT_EQ(spec.order, (std::vector<ElementId>{1, 0}));
  const ProblemInstance inst = BuildInstance(spec, ".");
  EXPECT_NEAR(Objective(inst, {{0, 2}}), 1.8, 1e-12);
}

TEST(StreamParseTest, EmptyBody) {
  const StreamSpec spec = Parse(kHeader);
  EXPECT_TRUE(spec.order.empty());
  const ProblemInstance inst = BuildInstance(spec, ".");
  const SolutionReport report = latstream::Run(inst, AlgoConfig{});
  EXPECT_TRUE(report.x.empty());
  EXPECT_EQ(report.objective, 0.0);
}

TEST(StreamParseTest, FormatErrorsNameTheLine) {
  const std::string header = std::string(kHeader) + "\n";
  EXPECT_EQ(ParseFailure(header + R"({"type":"arrive","e":"a"})" "\n"
                                  R"({"type":"arrive","e":"zz"})"),
            (std::pair<std::string, std::size_t>{"format", 3}));
  EXPECT_EQ(ParseFailure(header + R"({"type":"arrive","e":"a"})" "\n"
                                  R"({"type":"arrive","e":"a"})"),
            (std::pair<std::string, std::size_t>{"format", 3}));
  EXPECT_EQ(ParseFailure(header + "{oops"),
            (std::pair<std::string, std::size_t>{"format", 2}));
  EXPECT_EQ(ParseFailure(R"({"type":"arrive","e":"a"})"),
            (std::pair<std::string, std::size_t>{"format", 1}));
  EXPECT_EQ(ParseFailure(""), (std::pair<std::string, std::size_t>{"format", 1}));
}

TEST(StreamParseTest, ConfigErrors) {
  json header = json::parse(kHeader);
  header["costs"]["a"] = -1.0;
  EXPECT_EQ(ParseFailure(header.dump()).first, "config");
  header = json::parse(kHeader);
  header["k"] = -2;
  EXPECT_EQ(ParseFailure(header.dump()).first, "config");
  header = json::parse(kHeader);
  header["box"]["a"] = -1;
  EXPECT_EQ(ParseFailure(header.dump()).first, "config");
}

TEST(StreamWriteTest, RoundTrip) {
  GeneratorParams params;
  params.seed = 5;
  const StreamSpec spec = Generate(params);
  std::ostringstream out;
  WriteStream(out, spec);
  const StreamSpec back = Parse(out.str());
  EXPECT_EQ(back.elements, spec.elements);
  EXPECT_EQ(back.box, spec.box);
  EXPECT_EQ(back.costs, spec.costs);
  EXPECT_EQ(back.order, spec.order);
  EXPECT_EQ(back.oracle, spec.oracle);
}

TEST(CanonicalDumpTest, SortedFixedDecimals) {
  const json value = json::parse(R"({"z": 1, "a": [0.5, -0.0, 2], "m": {"y": 1e-12, "b": null}})");
  EXPECT_EQ(CanonicalDump(value),
            "{\n"
            "  \"a\": [\n"
            "    0.500000000,\n"
            "    0.000000000,\n"
            "    2\n"
            "  ],\n"
            "  \"m\": {\n"
            "    \"b\": null,\n"
            "    \"y\": 0.000000000\n"
            "  },\n"
            "  \"z\": 1\n"
            "}\n");
}

TEST(GeneratorTest, Deterministic) {
  for (Family family : {Family::kCoverage, Family::kBudget, Family::kAdversarial}) {
    GeneratorParams params;
    params.family = family;
    params.seed = 7;
    std::ostringstream first, second;
    WriteStream(first, Generate(params));
    WriteStream(second, Generate(params));
    EXPECT_EQ(first.str(), second.str());
    params.seed = 8;
    std::ostringstream other;
    WriteStream(other, Generate(params));
    EXPECT_NE(first.str(), other.str());
  }
}

TEST(GeneratorTest, Shape) {
  GeneratorParams params;
  params.n = 1;
  params.bmax = 3;
  params.k = 2;
  const StreamSpec spec = Generate(params);
  EXPECT_EQ(spec.order, std::vector<ElementId>{0});
  const ProblemInstance inst = BuildInstance(spec, ".");
  EXPECT_TRUE(inst.StreamIsPermutation());
  for (int seed = 0; seed < 20; ++seed) {
    params.n = 5;
    params.seed = seed;
    const StreamSpec s = Generate(params);
    for (std::size_t e = 0; e < 5; ++e) {
      EXPECT_GE(s.box[e], 1u);
      EXPECT_LE(s.box[e], 3u);
      EXPECT_GE(s.costs[e], 0.0);
      EXPECT_LE(s.costs[e], 0.5);
    }
  }
  params.n = 0;
  EXPECT_THROW(Generate(params), InputError);
  EXPECT_THROW(ParseFamily("spiral"), InputError);
}

TEST(ReportTest, RecordedLedgersReplay) {
  auto inst = testing::GeneratedInstance(Family::kCoverage, 3);
  AlgoConfig cfg;
  cfg.epsilon = 0.1;
  const SolutionReport report = latstream::Run(inst, cfg);
  // Through text, as the CLI does.
  const json doc = json::parse(CanonicalDump(ReportToJson(inst, report)));
  const SolutionReport recorded = ReportFromJson(doc, inst);
  ASSERT_EQ(recorded.instances.size(), report.instances.size());
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    EXPECT_EQ(recorded.instances[i].tau(), report.instances[i].tau());
    EXPECT_EQ(recorded.instances[i].x(), report.instances[i].x());
  }
  EXPECT_TRUE(VerifyRun(inst, recorded.config, recorded).all_satisfied());

  // Raise one threshold: its ledger no longer clears it.
  json forged = doc;
  for (json& item : forged["instances"]) {
    if (!item["ledger"].empty()) {
      item["tau"] = item["tau"].get<double>() * 50.0;
      break;
    }
  }
  const SolutionReport bad = ReportFromJson(forged, inst);
  EXPECT_FALSE(VerifyRun(inst, bad.config, bad).all_satisfied());
}

TEST(ReportTest, ConfigEcho) {
  AlgoConfig cfg;
  cfg.mode = Mode::kAlphaWeak;
  cfg.alpha = 0.5;
  cfg.epsilon = 0.2;
  const AlgoConfig back = ConfigFromJson(json::parse(CanonicalDump(ConfigToJson(cfg))));
  EXPECT_EQ(back.mode, Mode::kAlphaWeak);
  EXPECT_EQ(back.alpha, 0.5);
  EXPECT_EQ(back.epsilon, 0.2);
  EXPECT_EQ(back.ResolvedLevelSearch(), LevelSearch::kLinearScan);
  AlgoConfig sub;
  const AlgoConfig sub_back = ConfigFromJson(ConfigToJson(sub));
  EXPECT_FALSE(sub_back.t.has_value());
}

}  // namespace
}  // namespace latstream
