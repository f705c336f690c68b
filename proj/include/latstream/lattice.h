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

// Integer-lattice vectors over a finite ground set.
//
// A LatticeVector is a sparse multiset: it stores only nonzero
// multiplicities, so support and total are O(nnz). All binary operations
// are coordinate-wise and return new values; nothing here touches an
// oracle.

#ifndef LATSTREAM_LATTICE_H_
#define LATSTREAM_LATTICE_H_

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latstream {

using ElementId = std::uint32_t;
using Count = std::uint64_t;

// Box entry meaning b(e) = +infinity.
inline constexpr Count kUnbounded = std::numeric_limits<Count>::max();

// Absolute tolerance for every gain/cost comparison in the library.
inline constexpr double kValueTolerance = 1e-9;

// Ordered, duplicate-free list of element identifiers. Iteration order is
// the declaration order and doubles as the dense index space.
class GroundSet {
 public:
  GroundSet() = default;
  // Throws InputError("format") on duplicate or empty identifiers.
  explicit GroundSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& name(ElementId e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<ElementId> Find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ElementId> index_;
};

class LatticeVector {
 public:
  using Storage = std::map<ElementId, Count>;

  LatticeVector() = default;
  LatticeVector(std::initializer_list<std::pair<const ElementId, Count>> init);

  // Dense view: coordinate i of `counts` is the multiplicity of element i.
  static LatticeVector FromDense(std::span<const Count> counts);
  std::vector<Count> ToDense(std::size_t n) const;

  Count operator[](ElementId e) const;
  void Set(ElementId e, Count c);
  void Add(ElementId e, Count c);

  Count total() const { return total_; }
  bool empty() const { return counts_.empty(); }
  std::size_t support_size() const { return counts_.size(); }
  std::vector<ElementId> Support() const;

  Storage::const_iterator begin() const { return counts_.begin(); }
  Storage::const_iterator end() const { return counts_.end(); }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  Storage counts_;
  Count total_ = 0;
};

// x + l * chi_e.
LatticeVector AddScaled(const LatticeVector& x, ElementId e, Count l);
LatticeVector operator+(const LatticeVector& x, const LatticeVector& y);
// Coordinate-wise max / min.
LatticeVector Join(const LatticeVector& x, const LatticeVector& y);
LatticeVector Meet(const LatticeVector& x, const LatticeVector& y);
// max(x - y, 0) coordinate-wise: the multiset difference {x} \ {y}.
LatticeVector MultisetDiff(const LatticeVector& x, const LatticeVector& y);
// x <= y coordinate-wise.
bool LessEq(const LatticeVector& x, const LatticeVector& y);

std::string ToString(const LatticeVector& x, const GroundSet* ground = nullptr);

// Box b and cardinality budget k of the problem.
struct ConstraintSpec {
  std::vector<Count> box;  // indexed by ElementId; kUnbounded allowed
  Count k = 0;

  std::size_t size() const { return box.size(); }
  Count Box(ElementId e) const { return e < box.size() ? box[e] : 0; }
  // min(b(e), k): the largest multiplicity any feasible vector can hold.
  Count Cap(ElementId e) const;
  // Description of the first violated constraint, or nullopt if feasible.
  std::optional<std::string> Violation(const LatticeVector& x) const;
  bool Feasible(const LatticeVector& x) const { return !Violation(x); }
};

// Calls `visit` on every vector y with y(e) <= caps[e], in lexicographic
// order of the dense count vector (element 0 most significant). Stops early
// when `visit` returns false.
template <typename Visitor>
void ForEachInBox(std::span<const Count> caps, Visitor&& visit) {
  std::vector<Count> counts(caps.size(), 0);
  while (true) {
    if (!visit(std::as_const(counts))) return;
    std::size_t i = counts.size();
    while (i > 0) {
      --i;
      if (counts[i] < caps[i]) {
        ++counts[i];
        break;
      }
      counts[i] = 0;
      if (i == 0) return;
    }
    if (counts.empty()) return;
  }
}

// Number of points in the box, saturating at `limit + 1`.
std::uint64_t BoxPointCount(std::span<const Count> caps, std::uint64_t limit);

}  // namespace latstream

#endif  // LATSTREAM_LATTICE_H_
