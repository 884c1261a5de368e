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

#ifndef SPECKLENET_MODEL_HPP_
#define SPECKLENET_MODEL_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "specklenet/layers.hpp"
#include "specklenet/tensor.hpp"

namespace specklenet {

// SpeckleNet: four conv3x3(valid)+ReLU+maxpool2 stages with 32/64/128/128
// filters, flatten, dense 512 + ReLU, dense class_count + softmax.

inline constexpr std::size_t kConvStages = 4;
inline constexpr std::array<std::size_t, kConvStages> kConvFilters = {32, 64, 128, 128};
inline constexpr std::size_t kKernelSide = 3;
inline constexpr std::size_t kHiddenUnits = 512;
inline constexpr std::size_t kDefaultClassCount = 30;
inline constexpr std::size_t kFullProfileSide = 256;
inline constexpr std::size_t kTinyProfileSide = 64;
/// Smallest input side for which every stage keeps a non-empty output.
inline constexpr std::size_t kMinInputSide = 46;

/// Spatial sides through the network: for each stage, the side after the
/// convolution and after the pool.
struct ShapeChain {
  std::size_t input_side = 0;
  std::array<std::size_t, kConvStages> conv_sides{};
  std::array<std::size_t, kConvStages> pool_sides{};
  std::size_t flatten_dim = 0;
};

/// Throws ShapeError naming the minimum side when input_side < 46.
ShapeChain shape_chain(std::size_t input_side);

template <typename T>
class BasicNetworkParams {
 public:
  static constexpr std::size_t kTensorCount = 2 * kConvStages + 4;

  BasicNetworkParams() = default;
  /// All-zero parameters with the topology's shapes.
  BasicNetworkParams(std::size_t input_side, std::size_t class_count);

  std::size_t input_side() const noexcept { return input_side_; }
  std::size_t class_count() const noexcept { return class_count_; }

  BasicTensor<T>& conv_kernels(std::size_t stage) { return tensors_.at(2 * stage); }
  const BasicTensor<T>& conv_kernels(std::size_t stage) const { return tensors_.at(2 * stage); }
  BasicTensor<T>& conv_bias(std::size_t stage) { return tensors_.at(2 * stage + 1); }
  const BasicTensor<T>& conv_bias(std::size_t stage) const { return tensors_.at(2 * stage + 1); }
  BasicTensor<T>& dense_weights(std::size_t layer) { return tensors_.at(2 * kConvStages + 2 * layer); }
  const BasicTensor<T>& dense_weights(std::size_t layer) const {
    return tensors_.at(2 * kConvStages + 2 * layer);
  }
  BasicTensor<T>& dense_bias(std::size_t layer) { return tensors_.at(2 * kConvStages + 2 * layer + 1); }
  const BasicTensor<T>& dense_bias(std::size_t layer) const {
    return tensors_.at(2 * kConvStages + 2 * layer + 1);
  }

  /// Tensors in checkpoint order: conv1.kernel, conv1.bias, ..., dense2.bias.
  std::span<BasicTensor<T>> tensors() noexcept { return tensors_; }
  std::span<const BasicTensor<T>> tensors() const noexcept { return tensors_; }
  static std::string_view tensor_name(std::size_t index);
  /// Shapes every tensor must have for the given topology.
  static std::array<Shape, kTensorCount> expected_shapes(std::size_t input_side,
                                                         std::size_t class_count);

  std::size_t param_count() const noexcept;

  friend bool operator==(const BasicNetworkParams&, const BasicNetworkParams&) = default;

 private:
  std::size_t input_side_ = 0;
  std::size_t class_count_ = 0;
  std::array<BasicTensor<T>, kTensorCount> tensors_;
};

using NetworkParams = BasicNetworkParams<float>;
using NetworkParamsD = BasicNetworkParams<double>;

template <typename To, typename From>
BasicNetworkParams<To> params_cast(const BasicNetworkParams<From>& in) {
  BasicNetworkParams<To> out(in.input_side(), in.class_count());
  for (std::size_t i = 0; i < in.tensors().size(); ++i)
    out.tensors()[i] = tensor_cast<To>(in.tensors()[i]);
  return out;
}

/// Glorot-uniform weights (fan_in/fan_out include the kernel area), zero
/// biases. Deterministic for a given seed regardless of T.
template <typename T>
BasicNetworkParams<T> build_network(std::size_t input_side, std::size_t class_count,
                                    std::uint64_t seed);

/// Every intermediate value the backward pass needs.
template <typename T>
struct ForwardTrace {
  std::array<BasicTensor<T>, kConvStages> stage_inputs;  // image, pool1, pool2, pool3
  std::array<BasicTensor<T>, kConvStages> conv_outputs;  // before ReLU
  std::array<PoolTrace<T>, kConvStages> pools;           // pooled ReLU outputs
  BasicTensor<T> flat;
  BasicTensor<T> hidden_pre;
  BasicTensor<T> hidden;
  BasicTensor<T> logits;
  BasicTensor<T> probs;
};

template <typename T>
ForwardTrace<T> forward(const BasicNetworkParams<T>& params, const BasicTensor<T>& image);

template <typename T>
struct LabeledImage {
  const BasicTensor<T>* image = nullptr;
  std::size_t label = 0;
};

template <typename T>
struct BatchGradients {
  T mean_loss = T(0);
  BasicNetworkParams<T> grads;
  /// Samples whose pre-update prediction matched the label.
  std::size_t correct = 0;
};

/// Mean categorical cross-entropy over the batch and its exact gradient.
/// Samples are accumulated in batch order.
template <typename T>
BatchGradients<T> loss_and_gradients(const BasicNetworkParams<T>& params,
                                     std::span<const LabeledImage<T>> batch);

struct Prediction {
  std::size_t class_index = 0;
  double probability = 0.0;
};

/// Highest-probability class; ties go to the lowest index.
template <typename T>
Prediction predict(const BasicNetworkParams<T>& params, const BasicTensor<T>& image);

}  // namespace specklenet

#endif  // SPECKLENET_MODEL_HPP_
