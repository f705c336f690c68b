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

#include "latstream/lattice.h"

#include <algorithm>
#include <sstream>

#include "latstream/errors.h"

namespace latstream {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw InputError("format", "empty element identifier");
    }
    if (!index_.emplace(names_[i], static_cast<ElementId>(i)).second) {
      throw InputError("format", "duplicate element identifier '" +
                                     names_[i] + "'");
    }
  }
}

std::optional<ElementId> GroundSet::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LatticeVector::LatticeVector(
    std::initializer_list<std::pair<const ElementId, Count>> init) {
  for (const auto& [e, c] : init) Add(e, c);
}

LatticeVector LatticeVector::FromDense(std::span<const Count> counts) {
  LatticeVector x;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) x.Set(static_cast<ElementId>(i), counts[i]);
  }
  return x;
}

std::vector<Count> LatticeVector::ToDense(std::size_t n) const {
  std::vector<Count> dense(n, 0);
  for (const auto& [e, c] : counts_) {
    if (e < n) dense[e] = c;
  }
  return dense;
}

Count LatticeVector::operator[](ElementId e) const {
  auto it = counts_.find(e);
  return it == counts_.end() ? 0 : it->second;
}

void LatticeVector::Set(ElementId e, Count c) {
  auto it = counts_.find(e);
  if (it != counts_.end()) {
    total_ -= it->second;
    if (c == 0) {
      counts_.erase(it);
      return;
    }
    it->second = c;
  } else if (c > 0) {
    counts_.emplace(e, c);
  }
  total_ += c;
}

void LatticeVector::Add(ElementId e, Count c) {
  if (c == 0) return;
  counts_[e] += c;
  total_ += c;
}

std::vector<ElementId> LatticeVector::Support() const {
  std::vector<ElementId> support;
  support.reserve(counts_.size());
  for (const auto& [e, c] : counts_) support.push_back(e);
  return support;
}

LatticeVector AddScaled(const LatticeVector& x, ElementId e, Count l) {
  LatticeVector result = x;
  result.Add(e, l);
  return result;
}

LatticeVector operator+(const LatticeVector& x, const LatticeVector& y) {
  LatticeVector result = x;
  for (const auto& [e, c] : y) result.Add(e, c);
  return result;
}

LatticeVector Join(const LatticeVector& x, const LatticeVector& y) {
  LatticeVector result = x;
  for (const auto& [e, c] : y) {
    if (c > result[e]) result.Set(e, c);
  }
  return result;
}

LatticeVector Meet(const LatticeVector& x, const LatticeVector& y) {
  LatticeVector result;
  for (const auto& [e, c] : x) {
    const Count other = y[e];
    if (other > 0) result.Set(e, std::min(c, other));
  }
  return result;
}

LatticeVector MultisetDiff(const LatticeVector& x, const LatticeVector& y) {
  LatticeVector result;
  for (const auto& [e, c] : x) {
    const Count other = y[e];
    if (c > other) result.Set(e, c - other);
  }
  return result;
}

bool LessEq(const LatticeVector& x, const LatticeVector& y) {
  return std::all_of(x.begin(), x.end(),
                     [&y](const auto& entry) { return entry.second <= y[entry.first]; });
}

std::string ToString(const LatticeVector& x, const GroundSet* ground) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [e, c] : x) {
    if (!first) out << ", ";
    first = false;
    if (ground != nullptr && e < ground->size()) {
      out << ground->name(e);
    } else {
      out << '#' << e;
    }
    out << ':' << c;
  }
  out << '}';
  return out.str();
}

Count ConstraintSpec::Cap(ElementId e) const { return std::min(Box(e), k); }

std::optional<std::string> ConstraintSpec::Violation(
    const LatticeVector& x) const {
  for (const auto& [e, c] : x) {
    if (e >= box.size()) {
      return "element #" + std::to_string(e) + " is outside the ground set";
    }
    if (box[e] != kUnbounded && c > box[e]) {
      return "box constraint violated at element #" + std::to_string(e) +
             ": " + std::to_string(c) + " > " + std::to_string(box[e]);
    }
  }
  if (x.total() > k) {
    return "cardinality constraint violated: total " +
           std::to_string(x.total()) + " > k = " + std::to_string(k);
  }
  return std::nullopt;
}

std::uint64_t BoxPointCount(std::span<const Count> caps, std::uint64_t limit) {
  std::uint64_t points = 1;
  for (Count cap : caps) {
    if (cap == kUnbounded || cap >= limit) return limit + 1;
    points *= cap + 1;
    if (points > limit) return limit + 1;
  }
  return points;
}

}  // namespace latstream
