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

#include "specklenet/layers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specklenet/gemm.hpp"

namespace specklenet {
namespace {

struct ConvGeometry {
  std::size_t height, width, in_channels;
  std::size_t kernel_h, kernel_w, out_channels;
  std::size_t out_h, out_w;

  std::size_t positions() const { return out_h * out_w; }
  std::size_t patch_len() const { return kernel_h * kernel_w * in_channels; }
};

template <typename T>
ConvGeometry conv_geometry(const BasicTensor<T>& input, const BasicTensor<T>& kernels) {
  if (input.rank() != 3) {
    throw ShapeError("conv2d: input must be [H,W,Cin], got " + shape_to_string(input.shape()));
  }
  if (kernels.rank() != 4) {
    throw ShapeError("conv2d: kernels must be [KH,KW,Cin,Cout], got " +
                     shape_to_string(kernels.shape()));
  }
  ConvGeometry g{input.dim(0), input.dim(1), input.dim(2), kernels.dim(0),
                 kernels.dim(1), kernels.dim(3), 0, 0};
  if (kernels.dim(2) != g.in_channels) {
    throw ShapeError("conv2d: kernel input channels " + std::to_string(kernels.dim(2)) +
                     " != input channels " + std::to_string(g.in_channels));
  }
  if (g.height < g.kernel_h || g.width < g.kernel_w) {
    throw ShapeError("conv2d: input " + shape_to_string(input.shape()) +
                     " is smaller than kernel " + std::to_string(g.kernel_h) + "x" +
                     std::to_string(g.kernel_w));
  }
  g.out_h = g.height - g.kernel_h + 1;
  g.out_w = g.width - g.kernel_w + 1;
  return g;
}

// Lowers the input into a [positions, KH*KW*Cin] patch matrix whose column
// order matches the row order of the kernel bank viewed as a matrix.
template <typename T>
std::vector<T> im2col(const BasicTensor<T>& input, const ConvGeometry& g) {
  std::vector<T> patches(g.positions() * g.patch_len());
  const T* src = input.raw();
  T* dst = patches.data();
  for (std::size_t y = 0; y < g.out_h; ++y) {
    for (std::size_t x = 0; x < g.out_w; ++x) {
      for (std::size_t dy = 0; dy < g.kernel_h; ++dy) {
        const T* row = src + ((y + dy) * g.width + x) * g.in_channels;
        dst = std::copy(row, row + g.kernel_w * g.in_channels, dst);
      }
    }
  }
  return patches;
}

template <typename T>
void col2im_add(const std::vector<T>& patches, const ConvGeometry& g, BasicTensor<T>& out) {
  T* dst = out.raw();
  const T* src = patches.data();
  for (std::size_t y = 0; y < g.out_h; ++y) {
    for (std::size_t x = 0; x < g.out_w; ++x) {
      for (std::size_t dy = 0; dy < g.kernel_h; ++dy) {
        T* row = dst + ((y + dy) * g.width + x) * g.in_channels;
        const std::size_t len = g.kernel_w * g.in_channels;
        for (std::size_t i = 0; i < len; ++i) row[i] += src[i];
        src += len;
      }
    }
  }
}

template <typename T>
void require_one_hot(const BasicTensor<T>& probs, const BasicTensor<T>& onehot) {
  require_same_shape(onehot.shape(), probs.shape(), "cross_entropy one-hot");
  std::size_t ones = 0;
  for (T v : onehot.data()) {
    if (v == T(1)) {
      ++ones;
    } else if (v != T(0)) {
      throw NumericError("cross_entropy: one-hot vector contains " + std::to_string(v));
    }
  }
  if (ones != 1) {
    throw NumericError("cross_entropy: one-hot vector has " + std::to_string(ones) +
                       " entries equal to 1");
  }
}

}  // namespace

template <typename T>
BasicTensor<T> conv2d_valid(const BasicTensor<T>& input, const BasicTensor<T>& kernels,
                            const BasicTensor<T>& bias) {
  const ConvGeometry g = conv_geometry(input, kernels);
  if (bias.rank() != 1 || bias.dim(0) != g.out_channels) {
    throw ShapeError("conv2d: bias " + shape_to_string(bias.shape()) + " does not match " +
                     std::to_string(g.out_channels) + " output channels");
  }
  BasicTensor<T> out({g.out_h, g.out_w, g.out_channels});
  T* o = out.raw();
  for (std::size_t r = 0; r < g.positions(); ++r)
    std::copy(bias.raw(), bias.raw() + g.out_channels, o + r * g.out_channels);
  const std::vector<T> patches = im2col(input, g);
  gemm::multiply_nn(g.positions(), g.out_channels, g.patch_len(), patches.data(), kernels.raw(), o);
  return out;
}

template <typename T>
ConvGrads<T> conv2d_valid_backward(const BasicTensor<T>& input, const BasicTensor<T>& kernels,
                                   const BasicTensor<T>& upstream) {
  const ConvGeometry g = conv_geometry(input, kernels);
  require_same_shape(upstream.shape(), Shape{g.out_h, g.out_w, g.out_channels},
                     "conv2d_backward upstream");
  ConvGrads<T> grads{BasicTensor<T>(input.shape()), BasicTensor<T>(kernels.shape()),
                     BasicTensor<T>({g.out_channels})};

  const T* up = upstream.raw();
  T* gb = grads.bias.raw();
  for (std::size_t r = 0; r < g.positions(); ++r)
    for (std::size_t co = 0; co < g.out_channels; ++co) gb[co] += up[r * g.out_channels + co];

  const std::vector<T> patches = im2col(input, g);
  gemm::multiply_tn(g.patch_len(), g.out_channels, g.positions(), patches.data(), up,
                    grads.kernels.raw());

  std::vector<T> patch_grads(patches.size(), T(0));
  gemm::multiply_nt(g.positions(), g.patch_len(), g.out_channels, up, kernels.raw(),
                    patch_grads.data());
  col2im_add(patch_grads, g, grads.input);
  return grads;
}

template <typename T>
PoolTrace<T> maxpool2(const BasicTensor<T>& input) {
  if (input.rank() != 3) {
    throw ShapeError("maxpool2: input must be [H,W,C], got " + shape_to_string(input.shape()));
  }
  const std::size_t h = input.dim(0), w = input.dim(1), c = input.dim(2);
  if (h < 2 || w < 2) {
    throw ShapeError("maxpool2: input " + shape_to_string(input.shape()) +
                     " is smaller than the 2x2 window");
  }
  const std::size_t oh = h / 2, ow = w / 2;
  PoolTrace<T> trace{BasicTensor<T>({oh, ow, c}), std::vector<std::size_t>(oh * ow * c),
                     input.shape()};
  const T* in = input.raw();
  T* out = trace.output.raw();
  std::size_t cell = 0;
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      const std::size_t base = ((2 * y) * w + 2 * x) * c;
      const std::size_t offsets[4] = {0, c, w * c, w * c + c};
      for (std::size_t ch = 0; ch < c; ++ch, ++cell) {
        std::size_t best = base + ch;
        for (std::size_t q = 1; q < 4; ++q) {
          const std::size_t idx = base + offsets[q] + ch;
          if (in[idx] > in[best]) best = idx;
        }
        out[cell] = in[best];
        trace.argmax[cell] = best;
      }
    }
  }
  return trace;
}

template <typename T>
BasicTensor<T> maxpool2_backward(const PoolTrace<T>& trace, const BasicTensor<T>& upstream) {
  require_same_shape(upstream.shape(), trace.output.shape(), "maxpool2_backward upstream");
  BasicTensor<T> grad(trace.input_shape);
  for (std::size_t i = 0; i < upstream.size(); ++i) grad[trace.argmax[i]] += upstream[i];
  return grad;
}

template <typename T>
BasicTensor<T> relu(const BasicTensor<T>& input) {
  BasicTensor<T> out(input);
  for (T& v : out.data()) v = v > T(0) ? v : T(0);
  return out;
}

template <typename T>
BasicTensor<T> relu_backward(const BasicTensor<T>& input, const BasicTensor<T>& upstream) {
  require_same_shape(upstream.shape(), input.shape(), "relu_backward upstream");
  BasicTensor<T> grad(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) grad[i] = input[i] > T(0) ? upstream[i] : T(0);
  return grad;
}

template <typename T>
BasicTensor<T> dense(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                     const BasicTensor<T>& bias) {
  if (input.rank() != 1 || weights.rank() != 2 || weights.dim(0) != input.dim(0)) {
    throw ShapeError("dense: input " + shape_to_string(input.shape()) +
                     " incompatible with weights " + shape_to_string(weights.shape()));
  }
  const std::size_t m = weights.dim(1);
  if (bias.rank() != 1 || bias.dim(0) != m) {
    throw ShapeError("dense: bias " + shape_to_string(bias.shape()) + " does not match " +
                     std::to_string(m) + " outputs");
  }
  BasicTensor<T> out(bias);
  gemm::multiply_nn(std::size_t{1}, m, input.dim(0), input.raw(), weights.raw(), out.raw());
  return out;
}

template <typename T>
DenseGrads<T> dense_backward(const BasicTensor<T>& input, const BasicTensor<T>& weights,
                             const BasicTensor<T>& upstream) {
  if (input.rank() != 1 || weights.rank() != 2 || weights.dim(0) != input.dim(0)) {
    throw ShapeError("dense_backward: input " + shape_to_string(input.shape()) +
                     " incompatible with weights " + shape_to_string(weights.shape()));
  }
  const std::size_t n = weights.dim(0), m = weights.dim(1);
  require_same_shape(upstream.shape(), Shape{m}, "dense_backward upstream");
  DenseGrads<T> grads{BasicTensor<T>({n}), BasicTensor<T>(weights.shape()), upstream};
  const T* w = weights.raw();
  const T* up = upstream.raw();
  T* gw = grads.weights.raw();
  for (std::size_t i = 0; i < n; ++i) {
    const T xi = input[i];
    T acc = T(0);
    for (std::size_t j = 0; j < m; ++j) {
      gw[i * m + j] = xi * up[j];
      acc += w[i * m + j] * up[j];
    }
    grads.input[i] = acc;
  }
  return grads;
}

template <typename T>
BasicTensor<T> softmax(const BasicTensor<T>& logits) {
  if (logits.rank() != 1) {
    throw ShapeError("softmax: expected a vector, got " + shape_to_string(logits.shape()));
  }
  const T peak = *std::max_element(logits.data().begin(), logits.data().end());
  BasicTensor<T> out(logits.shape());
  T sum = T(0);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    sum += out[i];
  }
  for (T& v : out.data()) v /= sum;
  return out;
}

template <typename T>
T cross_entropy(const BasicTensor<T>& probs, const BasicTensor<T>& onehot) {
  require_one_hot(probs, onehot);
  const std::size_t truth = argmax(onehot);
  const T p = std::clamp(probs[truth], static_cast<T>(kProbabilityFloor), T(1));
  return -std::log(p);
}

template <typename T>
BasicTensor<T> softmax_xent_grad(const BasicTensor<T>& probs, const BasicTensor<T>& onehot) {
  require_one_hot(probs, onehot);
  BasicTensor<T> grad(probs);
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= onehot[i];
  return grad;
}

template <typename T>
BasicTensor<T> flatten(const BasicTensor<T>& input) {
  if (input.rank() != 3) {
    throw ShapeError("flatten: expected [H,W,C], got " + shape_to_string(input.shape()));
  }
  return input.reshaped({input.size()});
}

template <typename T>
BasicTensor<T> one_hot(std::size_t index, std::size_t count) {
  if (index >= count) {
    throw ShapeError("one_hot: index " + std::to_string(index) + " out of range for " +
                     std::to_string(count) + " classes");
  }
  BasicTensor<T> out({count});
  out[index] = T(1);
  return out;
}

template <typename T>
std::size_t argmax(const BasicTensor<T>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

#define SPECKLENET_INSTANTIATE_LAYERS(T)                                                        \
  template BasicTensor<T> conv2d_valid(const BasicTensor<T>&, const BasicTensor<T>&,            \
                                       const BasicTensor<T>&);                                  \
  template ConvGrads<T> conv2d_valid_backward(const BasicTensor<T>&, const BasicTensor<T>&,     \
                                              const BasicTensor<T>&);                           \
  template PoolTrace<T> maxpool2(const BasicTensor<T>&);                                        \
  template BasicTensor<T> maxpool2_backward(const PoolTrace<T>&, const BasicTensor<T>&);        \
  template BasicTensor<T> relu(const BasicTensor<T>&);                                          \
  template BasicTensor<T> relu_backward(const BasicTensor<T>&, const BasicTensor<T>&);          \
  template BasicTensor<T> dense(const BasicTensor<T>&, const BasicTensor<T>&,                   \
                                const BasicTensor<T>&);                                         \
  template DenseGrads<T> dense_backward(const BasicTensor<T>&, const BasicTensor<T>&,           \
                                        const BasicTensor<T>&);                                 \
  template BasicTensor<T> softmax(const BasicTensor<T>&);                                       \
  template T cross_entropy(const BasicTensor<T>&, const BasicTensor<T>&);                       \
  template BasicTensor<T> softmax_xent_grad(const BasicTensor<T>&, const BasicTensor<T>&);      \
  template BasicTensor<T> flatten(const BasicTensor<T>&);                                       \
  template BasicTensor<T> one_hot(std::size_t, std::size_t);                                    \
  template std::size_t argmax(const BasicTensor<T>&);

SPECKLENET_INSTANTIATE_LAYERS(float)
SPECKLENET_INSTANTIATE_LAYERS(double)

#undef SPECKLENET_INSTANTIATE_LAYERS

}  // namespace specklenet
