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

#include "specklenet/adamax.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace specklenet {

template <typename T>
AdamaxState<T> adamax_init(std::span<const BasicTensor<T>> params, AdamaxConfig config) {
  AdamaxState<T> state;
  state.config = config;
  state.first_moment.reserve(params.size());
  state.infinity_norm.reserve(params.size());
  for (const auto& p : params) {
    state.first_moment.emplace_back(p.shape());
    state.infinity_norm.emplace_back(p.shape());
  }
  return state;
}

template <typename T>
void adamax_step(std::span<BasicTensor<T>> params, std::span<const BasicTensor<T>> grads,
                 AdamaxState<T>& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw ShapeError("adamax_step: " + std::to_string(params.size()) + " parameters, " +
                     std::to_string(grads.size()) + " gradients, " +
                     std::to_string(state.first_moment.size()) + " state slots");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    require_same_shape(grads[i].shape(), params[i].shape(), "adamax_step gradient");
    require_same_shape(state.first_moment[i].shape(), params[i].shape(), "adamax_step state");
    if (!all_finite(grads[i])) {
      throw NumericError("adamax_step: non-finite gradient in tensor " + std::to_string(i));
    }
  }

  const AdamaxConfig& cfg = state.config;
  state.step += 1;
  const double correction = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const T step_size = static_cast<T>(cfg.learning_rate / correction);
  const T beta1 = static_cast<T>(cfg.beta1);
  const T one_minus_beta1 = static_cast<T>(1.0 - cfg.beta1);
  const T beta2 = static_cast<T>(cfg.beta2);
  const T epsilon = static_cast<T>(cfg.epsilon);

  for (std::size_t i = 0; i < params.size(); ++i) {
    T* p = params[i].raw();
    const T* g = grads[i].raw();
    T* m = state.first_moment[i].raw();
    T* u = state.infinity_norm[i].raw();
    for (std::size_t k = 0; k < params[i].size(); ++k) {
      m[k] = beta1 * m[k] + one_minus_beta1 * g[k];
      u[k] = std::max(beta2 * u[k], std::abs(g[k]));
      p[k] -= step_size * m[k] / (u[k] + epsilon);
    }
  }
}

template AdamaxState<float> adamax_init(std::span<const BasicTensor<float>>, AdamaxConfig);
template AdamaxState<double> adamax_init(std::span<const BasicTensor<double>>, AdamaxConfig);
template void adamax_step(std::span<BasicTensor<float>>, std::span<const BasicTensor<float>>,
                          AdamaxState<float>&);
template void adamax_step(std::span<BasicTensor<double>>, std::span<const BasicTensor<double>>,
                          AdamaxState<double>&);

}  // namespace specklenet
