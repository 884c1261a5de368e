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

#ifndef SPECKLENET_ADAMAX_HPP_
#define SPECKLENET_ADAMAX_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "specklenet/tensor.hpp"

namespace specklenet {

struct AdamaxConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  /// Added to the infinity norm in the denominator.
  double epsilon = 1e-8;
};

template <typename T>
struct AdamaxState {
  AdamaxConfig config;
  std::vector<BasicTensor<T>> first_moment;   // m
  std::vector<BasicTensor<T>> infinity_norm;  // u
  std::uint64_t step = 0;
};

/// Zero moments shaped like `params`, step 0.
template <typename T>
AdamaxState<T> adamax_init(std::span<const BasicTensor<T>> params, AdamaxConfig config = {});

/**
 * One Adamax update, element-wise:
 *
 *   t <- t + 1
 *   m <- beta1 * m + (1 - beta1) * g
 *   u <- max(beta2 * u, |g|)
 *   p <- p - lr / (1 - beta1^t) * m / (u + epsilon)
 *
 * Shapes and finiteness of every gradient are checked before anything is
 * modified, so a failed step leaves params and state untouched.
 */
template <typename T>
void adamax_step(std::span<BasicTensor<T>> params, std::span<const BasicTensor<T>> grads,
                 AdamaxState<T>& state);

}  // namespace specklenet

#endif  // SPECKLENET_ADAMAX_HPP_
