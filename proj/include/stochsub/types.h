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

#ifndef STOCHSUB_TYPES_H_
#define STOCHSUB_TYPES_H_

#include <bit>
#include <cstdint>
#include <vector>

namespace stochsub {

// Items and states are dense indices into the instance's name tables.
using ItemId = int;
using StateId = int;

inline constexpr StateId kUnobserved = -1;

// A subset of items, bit e set iff item e is in the set. Instances are
// limited to 64 items; every enumerating operation has a far smaller cap.
using ItemMask = std::uint64_t;

// A subset of E x O. Bit (item * num_states + state) marks the pair.
using PairMask = std::uint64_t;

inline constexpr int kMaxItems = 64;
inline constexpr int kMaxPairs = 64;

inline bool Contains(ItemMask set, ItemId e) { return (set >> e) & 1u; }
inline ItemMask With(ItemMask set, ItemId e) {
  return set | (ItemMask{1} << e);
}
inline ItemMask Without(ItemMask set, ItemId e) {
  return set & ~(ItemMask{1} << e);
}
inline int Size(ItemMask set) { return std::popcount(set); }
inline ItemMask FullMask(int n) {
  return n >= 64 ? ~ItemMask{0} : (ItemMask{1} << n) - 1;
}

std::vector<ItemId> MaskItems(ItemMask set);
ItemMask ItemsMask(const std::vector<ItemId>& items);

// Lexicographic order on the sorted item lists of two sets:
// {} < {0} < {0,1} < {0,1,2} < {0,2} < {1} < ...
bool LexLess(ItemMask a, ItemMask b);

// A full realization assigns a state to every item; a partial one uses
// kUnobserved for items outside its domain.
using Realization = std::vector<StateId>;
using PartialRealization = std::vector<StateId>;

ItemMask Domain(const PartialRealization& partial);

// Restriction of a realization to `items`, as a partial realization.
PartialRealization Restrict(const Realization& phi, ItemMask items);

// True iff `phi` agrees with every observed coordinate of `partial`.
bool Consistent(const Realization& phi, const PartialRealization& partial);

enum class Execution { kSerial, kParallel };

}  // namespace stochsub

#endif  // STOCHSUB_TYPES_H_
