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

#include "specklenet/model.hpp"

#include <cmath>
#include <string>

#include "specklenet/rng.hpp"

namespace specklenet {
namespace {

constexpr std::array<std::string_view, BasicNetworkParams<float>::kTensorCount> kTensorNames = {
    "conv1.kernel", "conv1.bias",   "conv2.kernel", "conv2.bias",  "conv3.kernel", "conv3.bias",
    "conv4.kernel", "conv4.bias",   "dense1.kernel", "dense1.bias", "dense2.kernel", "dense2.bias"};

template <typename T>
void add_into(BasicTensor<T>& acc, const BasicTensor<T>& delta) {
  T* a = acc.raw();
  const T* d = delta.raw();
  for (std::size_t i = 0; i < acc.size(); ++i) a[i] += d[i];
}

template <typename T>
void require_image(const BasicNetworkParams<T>& params, const BasicTensor<T>& image) {
  const std::size_t side = params.input_side();
  require_same_shape(image.shape(), Shape{side, side, 1}, "network input");
}

}  // namespace

ShapeChain shape_chain(std::size_t input_side) {
  ShapeChain chain;
  chain.input_side = input_side;
  std::size_t side = input_side;
  for (std::size_t s = 0; s < kConvStages; ++s) {
    if (side < kKernelSide + 1) {
      throw ShapeError("input side " + std::to_string(input_side) +
                       " is too small for the conv/pool chain; minimum is " +
                       std::to_string(kMinInputSide));
    }
    side -= kKernelSide - 1;
    chain.conv_sides[s] = side;
    side /= 2;
    chain.pool_sides[s] = side;
  }
  chain.flatten_dim = side * side * kConvFilters.back();
  return chain;
}

template <typename T>
BasicNetworkParams<T>::BasicNetworkParams(std::size_t input_side, std::size_t class_count)
    : input_side_(input_side), class_count_(class_count) {
  const auto shapes = expected_shapes(input_side, class_count);
  for (std::size_t i = 0; i < kTensorCount; ++i) tensors_[i] = BasicTensor<T>(shapes[i]);
}

template <typename T>
std::string_view BasicNetworkParams<T>::tensor_name(std::size_t index) {
  return kTensorNames.at(index);
}

template <typename T>
auto BasicNetworkParams<T>::expected_shapes(std::size_t input_side, std::size_t class_count)
    -> std::array<Shape, kTensorCount> {
  if (class_count < 1) throw ShapeError("class count must be at least 1");
  const ShapeChain chain = shape_chain(input_side);
  std::array<Shape, kTensorCount> shapes;
  std::size_t in_channels = 1;
  for (std::size_t s = 0; s < kConvStages; ++s) {
    shapes[2 * s] = {kKernelSide, kKernelSide, in_channels, kConvFilters[s]};
    shapes[2 * s + 1] = {kConvFilters[s]};
    in_channels = kConvFilters[s];
  }
  shapes[2 * kConvStages] = {chain.flatten_dim, kHiddenUnits};
  shapes[2 * kConvStages + 1] = {kHiddenUnits};
  shapes[2 * kConvStages + 2] = {kHiddenUnits, class_count};
  shapes[2 * kConvStages + 3] = {class_count};
  return shapes;
}

template <typename T>
std::size_t BasicNetworkParams<T>::param_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t.size();
  return n;
}

template <typename T>
BasicNetworkParams<T> build_network(std::size_t input_side, std::size_t class_count,
                                    std::uint64_t seed) {
  BasicNetworkParams<T> params(input_side, class_count);
  rng::Engine engine(seed);
  for (std::size_t i = 0; i < params.tensors().size(); i += 2) {
    BasicTensor<T>& w = params.tensors()[i];
    std::size_t fan_in, fan_out;
    if (w.rank() == 4) {
      const std::size_t area = w.dim(0) * w.dim(1);
      fan_in = area * w.dim(2);
      fan_out = area * w.dim(3);
    } else {
      fan_in = w.dim(0);
      fan_out = w.dim(1);
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (T& v : w.data()) v = static_cast<T>((2.0 * rng::uniform01(engine) - 1.0) * limit);
  }
  return params;
}

template <typename T>
ForwardTrace<T> forward(const BasicNetworkParams<T>& params, const BasicTensor<T>& image) {
  require_image(params, image);
  ForwardTrace<T> trace;
  const BasicTensor<T>* x = &image;
  for (std::size_t s = 0; s < kConvStages; ++s) {
    trace.stage_inputs[s] = *x;
    trace.conv_outputs[s] = conv2d_valid(*x, params.conv_kernels(s), params.conv_bias(s));
    trace.pools[s] = maxpool2(relu(trace.conv_outputs[s]));
    x = &trace.pools[s].output;
  }
  trace.flat = flatten(*x);
  trace.hidden_pre = dense(trace.flat, params.dense_weights(0), params.dense_bias(0));
  trace.hidden = relu(trace.hidden_pre);
  trace.logits = dense(trace.hidden, params.dense_weights(1), params.dense_bias(1));
  trace.probs = softmax(trace.logits);
  return trace;
}

template <typename T>
BatchGradients<T> loss_and_gradients(const BasicNetworkParams<T>& params,
                                     std::span<const LabeledImage<T>> batch) {
  if (batch.empty()) throw ShapeError("loss_and_gradients: empty batch");
  BatchGradients<T> result{T(0), BasicNetworkParams<T>(params.input_side(), params.class_count()), 0};
  BasicNetworkParams<T>& g = result.grads;

  for (const LabeledImage<T>& sample : batch) {
    const ForwardTrace<T> trace = forward(params, *sample.image);
    const BasicTensor<T> target = one_hot<T>(sample.label, params.class_count());
    result.mean_loss += cross_entropy(trace.probs, target);
    if (argmax(trace.probs) == sample.label) ++result.correct;

    const BasicTensor<T> d_logits = softmax_xent_grad(trace.probs, target);
    DenseGrads<T> out_layer = dense_backward(trace.hidden, params.dense_weights(1), d_logits);
    add_into(g.dense_weights(1), out_layer.weights);
    add_into(g.dense_bias(1), out_layer.bias);

    const BasicTensor<T> d_hidden_pre = relu_backward(trace.hidden_pre, out_layer.input);
    DenseGrads<T> hidden_layer = dense_backward(trace.flat, params.dense_weights(0), d_hidden_pre);
    add_into(g.dense_weights(0), hidden_layer.weights);
    add_into(g.dense_bias(0), hidden_layer.bias);

    BasicTensor<T> d = std::move(hidden_layer.input).reshaped(trace.pools.back().output.shape());
    for (std::size_t s = kConvStages; s-- > 0;) {
      const BasicTensor<T> d_relu = maxpool2_backward(trace.pools[s], d);
      const BasicTensor<T> d_conv = relu_backward(trace.conv_outputs[s], d_relu);
      ConvGrads<T> conv = conv2d_valid_backward(trace.stage_inputs[s], params.conv_kernels(s), d_conv);
      add_into(g.conv_kernels(s), conv.kernels);
      add_into(g.conv_bias(s), conv.bias);
      d = std::move(conv.input);
    }
  }

  const T count = static_cast<T>(batch.size());
  result.mean_loss /= count;
  for (BasicTensor<T>& t : g.tensors())
    for (T& v : t.data()) v /= count;
  return result;
}

template <typename T>
Prediction predict(const BasicNetworkParams<T>& params, const BasicTensor<T>& image) {
  const ForwardTrace<T> trace = forward(params, image);
  const std::size_t best = argmax(trace.probs);
  return {best, static_cast<double>(trace.probs[best])};
}

template class BasicNetworkParams<float>;
template class BasicNetworkParams<double>;

#define SPECKLENET_INSTANTIATE_MODEL(T)                                                     \
  template BasicNetworkParams<T> build_network<T>(std::size_t, std::size_t, std::uint64_t); \
  template ForwardTrace<T> forward(const BasicNetworkParams<T>&, const BasicTensor<T>&);    \
  template BatchGradients<T> loss_and_gradients(const BasicNetworkParams<T>&,               \
                                                std::span<const LabeledImage<T>>);          \
  template Prediction predict(const BasicNetworkParams<T>&, const BasicTensor<T>&);

SPECKLENET_INSTANTIATE_MODEL(float)
SPECKLENET_INSTANTIATE_MODEL(double)

#undef SPECKLENET_INSTANTIATE_MODEL

}  // namespace specklenet
