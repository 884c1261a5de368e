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

#ifndef SPECKLENET_LAYERS_HPP_
#define SPECKLENET_LAYERS_HPP_

#include <cstddef>
#include <vector>

#include "specklenet/tensor.hpp"

namespace specklenet {

// Differentiable layer primitives. All functions are pure and instantiated
// for float (training) and double (gradient checking).

template <typename T>
struct ConvGrads {
  BasicTensor<T> input;    // [H,W,Cin]
  BasicTensor<T> kernels;  // [KH,KW,Cin,Cout]
  BasicTensor<T> bias;     // [Cout]
};

template <typename T>
struct DenseGrads {
  BasicTensor<T> input;    // [n]
  BasicTensor<T> weights;  // [n,m]
  BasicTensor<T> bias;     // [m]
};

/// Max-pool output plus, per output cell, the flat input index it came from.
template <typename T>
struct PoolTrace {
  BasicTensor<T> output;
  std::vector<std::size_t> argmax;
  Shape input_shape;
};

/// Stride-1 convolution without padding (cross-correlation, as in every
/// deep-learning framework): input [H,W,Cin], kernels [KH,KW,Cin,Cout],
/// bias [Cout] -> [H-KH+1, W-KW+1, Cout].
template <typename T>
BasicTensor<T> conv2d_valid(const BasicTensor<T>& input, const BasicTensor<T>& kernels,
                            const BasicTensor<T>& bias);

template <typename T>
ConvGrads<T> conv2d_valid_backward(const BasicTensor<T>& input, const BasicTensor<T>& kernels,
                                   const BasicTensor<T>& upstream);

/// 2x2 windows, stride 2. A trailing odd row or column is dropped; ties go
/// to the first element in row-major window order.
template <typename T>
PoolTrace<T> maxpool2(const BasicTensor<T>& input);

template <typename T>
BasicTensor<T> maxpool2_backward(const PoolTrace<T>& trace, const BasicTensor<T>& upstream);

template <typename T>
BasicTensor<T> relu(const BasicTensor<T>& input);

/// Passes `upstream` where input > 0. The derivative at exactly 0 is 0.
template <typename T>
BasicTensor<T> relu_backward(const BasicTensor<T>& input, const BasicTensor<T>& upstream);

/// out[j] = bias[j] + sum_i input[i] * weights[i,j]
template <typename T>
BasicTensor<T> dense(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                     const BasicTensor<T>& bias);

template <typename T>
DenseGrads<T> dense_backward(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                             const BasicTensor<T>& upstream);

/// Max-shifted softmax over a rank-1 tensor.
template <typename T>
BasicTensor<T> softmax(const BasicTensor<T>& logits);

/// Lower bound applied to the true-class probability before taking the log.
inline constexpr double kProbabilityFloor = 1e-12;

/// -log(max(probs[true], 1e-12)). `onehot` must contain a single 1 and zeros.
template <typename T>
T cross_entropy(const BasicTensor<T>& probs, const BasicTensor<T>& onehot);

/// Gradient of cross_entropy(softmax(logits)) with respect to the logits.
template <typename T>
BasicTensor<T> softmax_xent_grad(const BasicTensor<T>& probs, const BasicTensor<T>& onehot);

template <typename T>
BasicTensor<T> flatten(const BasicTensor<T>& input);

template <typename T>
BasicTensor<T> one_hot(std::size_t index, std::size_t count);

/// Index of the first maximal element.
template <typename T>
std::size_t argmax(const BasicTensor<T>& values);

}  // namespace specklenet

#endif  // SPECKLENET_LAYERS_HPP_
