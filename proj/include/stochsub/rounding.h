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

#ifndef STOCHSUB_ROUNDING_H_
#define STOCHSUB_ROUNDING_H_

#include <cstdint>

#include "stochsub/constraints.h"
#include "stochsub/multilinear.h"
#include "stochsub/types.h"

namespace stochsub {

// Randomized pairwise-swap (pipage) rounding for uniform and partition
// matroids. Each swap keeps E[y] fixed, so every item is included with
// probability y_e, and E[f(S)] >= F(y) by convexity of F along e_i - e_j.
ItemMask PipageRound(const Constraint& constraint, const FractionalPoint& y,
                     std::uint64_t seed);

// Includes each item independently with probability y_e.
ItemMask IndependentRound(const FractionalPoint& y, std::uint64_t seed);

}  // namespace stochsub

#endif  // STOCHSUB_ROUNDING_H_
