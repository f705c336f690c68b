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

#include "latstream/oracle_spec.h"

#include <string>
#include <vector>

#include "latstream/errors.h"

namespace latstream {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& message) {
  throw InputError("format", "oracle spec: " + message);
}

const json& Field(const json& spec, const char* name) {
  auto it = spec.find(name);
  if (it == spec.end()) Fail(std::string("missing field '") + name + "'");
  return *it;
}

std::vector<double> Numbers(const json& value, const char* name) {
  if (!value.is_array()) Fail(std::string("'") + name + "' must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& v : value) {
    if (!v.is_number()) Fail(std::string("'") + name + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> Matrix(const json& value, const char* name) {
  if (!value.is_array()) Fail(std::string("'") + name + "' must be an array of rows");
  std::vector<std::vector<double>> out;
  out.reserve(value.size());
  for (const json& row : value) out.push_back(Numbers(row, name));
  return out;
}

std::vector<Count> ParseBox(const json& spec, std::size_t n) {
  auto it = spec.find("box");
  if (it == spec.end() || it->is_null()) return std::vector<Count>(n, kUnbounded);
  if (!it->is_array() || it->size() != n) {
    Fail("'box' must be an array with one entry per element");
  }
  std::vector<Count> box;
  box.reserve(n);
  for (const json& v : *it) {
    if (v.is_null()) {
      box.push_back(kUnbounded);
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      box.push_back(v.get<Count>());
    } else {
      Fail("'box' entries must be nonnegative integers or null");
    }
  }
  return box;
}

Phi ParsePhi(const json& value) {
  Phi phi;
  std::string type;
  if (value.is_string()) {
    type = value.get<std::string>();
  } else if (value.is_object()) {
    type = Field(value, "type").get<std::string>();
    if (auto cap = value.find("cap"); cap != value.end()) {
      if (!cap->is_number()) Fail("phi 'cap' must be a number");
      phi.cap = cap->get<double>();
    }
  } else {
    Fail("phi entries must be strings or objects");
  }
  if (type == "capped") {
    phi.type = Phi::Type::kCappedLinear;
  } else if (type == "sqrt") {
    phi.type = Phi::Type::kSqrt;
  } else if (type == "exp") {
    phi.type = Phi::Type::kOneMinusExp;
  } else if (type == "square") {
    phi.type = Phi::Type::kSquare;
  } else {
    Fail("unknown phi type '" + type + "'");
  }
  return phi;
}

std::vector<Phi> ParsePhis(const json& spec, std::size_t groups,
                           bool adversarial) {
  auto it = spec.find("phi");
  if (it == spec.end()) {
    if (!adversarial) Fail("missing field 'phi'");
    return std::vector<Phi>(groups, Phi{Phi::Type::kSquare, 0.0});
  }
  if (!it->is_array()) Fail("'phi' must be an array");
  std::vector<Phi> phis;
  for (const json& v : *it) phis.push_back(ParsePhi(v));
  return phis;
}

SubmodularityClass ParseClaim(const json& spec) {
  auto it = spec.find("claim");
  if (it == spec.end()) return SubmodularityClass::kAlphaWeak;
  const std::string claim = it->get<std::string>();
  if (claim == "dr-submodular") return SubmodularityClass::kDrSubmodular;
  if (claim == "lattice-submodular") return SubmodularityClass::kLatticeSubmodular;
  if (claim == "alpha-weak") return SubmodularityClass::kAlphaWeak;
  Fail("unknown claim '" + claim + "'");
}

json PhiToJson(const Phi& phi) {
  json out = {{"type", ToString(phi.type)}};
  if (phi.type == Phi::Type::kCappedLinear) out["cap"] = phi.cap;
  return out;
}

std::shared_ptr<const GainOracle> BuildOracle(const json& spec, std::size_t n);

}  // namespace

json BoxToJson(const std::vector<Count>& box) {
  json out = json::array();
  for (Count b : box) {
    if (b == kUnbounded) {
      out.push_back(nullptr);
    } else {
      out.push_back(b);
    }
  }
  return out;
}

std::shared_ptr<const GainOracle> OracleFromJson(const json& spec,
                                                 std::size_t n) {
  try {
    return BuildOracle(spec, n);
  } catch (const json::exception& e) {
    Fail(e.what());
  }
}

namespace {

std::shared_ptr<const GainOracle> BuildOracle(const json& spec, std::size_t n) {
  if (!spec.is_object()) Fail("expected a JSON object");
  const json& kind_field = Field(spec, "kind");
  if (!kind_field.is_string()) Fail("'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  std::vector<Count> box = ParseBox(spec, n);

  if (kind == "coverage" || kind == "adversarial") {
    auto weights = Numbers(Field(spec, "weights"), "weights");
    auto incidence = Matrix(Field(spec, "incidence"), "incidence");
    auto phis = ParsePhis(spec, weights.size(), kind == "adversarial");
    auto oracle = std::make_shared<CoverageOracle>(
        std::move(weights), std::move(incidence), std::move(phis),
        std::move(box));
    const bool want_adversarial = kind == "adversarial";
    if ((oracle->kind() == OracleKind::kAdversarial) != want_adversarial) {
      Fail(want_adversarial ? "adversarial oracles need a convex phi"
                            : "coverage oracles need concave phi");
    }
    return oracle;
  }
  if (kind == "budget") {
    return std::make_shared<BudgetAllocationOracle>(
        Numbers(Field(spec, "weights"), "weights"),
        Matrix(Field(spec, "incidence"), "incidence"),
        Numbers(Field(spec, "probabilities"), "probabilities"), std::move(box));
  }
  if (kind == "table") {
    if (spec.find("box") == spec.end()) Fail("table oracles need 'box'");
    return std::make_shared<TableOracle>(
        std::move(box), Numbers(Field(spec, "values"), "values"),
        ParseClaim(spec));
  }
  Fail("unknown kind '" + kind + "'");
}

}  // namespace

json OracleToJson(const GainOracle& oracle) {
  json out;
  out["kind"] = ToString(oracle.kind());
  out["box"] = BoxToJson(oracle.box());
  if (const auto* coverage = dynamic_cast<const CoverageOracle*>(&oracle)) {
    out["weights"] = coverage->weights();
    out["incidence"] = coverage->incidence();
    json phis = json::array();
    for (const Phi& phi : coverage->phis()) phis.push_back(PhiToJson(phi));
    out["phi"] = std::move(phis);
  } else if (const auto* budget =
                 dynamic_cast<const BudgetAllocationOracle*>(&oracle)) {
    out["weights"] = budget->weights();
    out["incidence"] = budget->incidence();
    out["probabilities"] = budget->probabilities();
  } else if (const auto* table = dynamic_cast<const TableOracle*>(&oracle)) {
    out["values"] = table->values();
    out["claim"] = ToString(table->claim());
  }
  return out;
}

}  // namespace latstream
