// Copyright 2026 The SpeckleNet Authors. All Rights Reserved.
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

#ifndef SPECKLENET_RNG_HPP_
#define SPECKLENET_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <utility>

namespace specklenet::rng {

// std::mt19937_64's output sequence is fixed by the standard, but the
// distributions and std::shuffle are not. Everything seeded in this library
// goes through the helpers below so results match across toolchains.

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n > 0, by rejection (no modulo bias).
inline std::size_t uniform_index(Engine& engine, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

/// Fisher-Yates shuffle.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Engine& engine) {
  const auto n = static_cast<std::size_t>(std::distance(first, last));
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = uniform_index(engine, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

/// Standard normal pair by the Box-Muller transform.
std::pair<double, double> normal_pair(Engine& engine);

/// SplitMix64 finaliser of a ^ (b * golden), for deriving independent
/// child seeds (per epoch, per image, ...).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace specklenet::rng

#endif  // SPECKLENET_RNG_HPP_
