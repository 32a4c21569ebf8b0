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

#ifndef STOCHSUB_COUNTER_RNG_H_
#define STOCHSUB_COUNTER_RNG_H_

#include <cstdint>

namespace stochsub {

// Stateless counter-based generator. Every draw is a pure function of its
// key, so parallel and serial loops over the same keys see the same numbers.
struct RngKey {
  std::uint64_t seed = 0;
  std::uint64_t round = 0;
  std::uint64_t item = 0;
  std::uint64_t sample = 0;
};

inline std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t CounterBits(const RngKey& key, std::uint64_t lane) {
  std::uint64_t h = Mix64(key.seed);
  h = Mix64(h ^ (key.round + 0x632be59bd9b4e019ULL));
  h = Mix64(h ^ (key.item + 0x85157af5ULL));
  h = Mix64(h ^ (key.sample + 0x2545f4914f6cdd1dULL));
  return Mix64(h ^ lane);
}

// Uniform in [0, 1) with 53 random bits.
inline double CounterUniform(const RngKey& key, std::uint64_t lane) {
  return static_cast<double>(CounterBits(key, lane) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Slight modulo bias is irrelevant for the
// generator sizes used here (n is tiny compared with 2^64).
inline std::uint64_t CounterIndex(const RngKey& key, std::uint64_t lane,
                                  std::uint64_t n) {
  return CounterBits(key, lane) % n;
}

}  // namespace stochsub

#endif  // STOCHSUB_COUNTER_RNG_H_
