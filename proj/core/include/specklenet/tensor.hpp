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

#ifndef SPECKLENET_TENSOR_HPP_
#define SPECKLENET_TENSOR_HPP_

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specklenet/error.hpp"

namespace specklenet {

using Shape = std::vector<std::size_t>;

/// Renders a shape as "[a,b,c]" for error messages.
std::string shape_to_string(const Shape& shape);

/// Product of all dimensions; throws ShapeError unless rank is 1..4 and
/// every dimension is positive.
std::size_t checked_element_count(const Shape& shape);

/**
 * Dense row-major array of rank 1 to 4.
 *
 * The last index varies fastest, so an activation map stored as [H,W,C]
 * keeps the channels of one pixel contiguous and a kernel bank stored as
 * [KH,KW,Cin,Cout] is already the [KH*KW*Cin, Cout] matrix used by the
 * lowered convolution.
 */
template <typename T>
class BasicTensor {
 public:
  using value_type = T;

  BasicTensor() = default;

  explicit BasicTensor(Shape shape, T fill = T(0))
      : shape_(std::move(shape)), data_(checked_element_count(shape_), fill) {}

  BasicTensor(Shape shape, std::vector<T> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (checked_element_count(shape_) != data_.size()) {
      throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                       " does not match shape " + shape_to_string(shape_));
    }
  }

  BasicTensor(Shape shape, std::initializer_list<T> values)
      : BasicTensor(std::move(shape), std::vector<T>(values)) {}

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }
  T* raw() noexcept { return data_.data(); }
  const T* raw() const noexcept { return data_.data(); }

  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  template <typename... Idx>
  T& operator()(Idx... idx) noexcept {
    return data_[offset(idx...)];
  }
  template <typename... Idx>
  const T& operator()(Idx... idx) const noexcept {
    return data_[offset(idx...)];
  }

  void fill(T value) noexcept { std::fill(data_.begin(), data_.end(), value); }

  /// Same data under a new shape with the same element count.
  BasicTensor reshaped(Shape shape) const& {
    BasicTensor out(*this);
    out.reshape(std::move(shape));
    return out;
  }
  BasicTensor reshaped(Shape shape) && {
    reshape(std::move(shape));
    return std::move(*this);
  }
  void reshape(Shape shape) {
    if (checked_element_count(shape) != data_.size()) {
      throw ShapeError("cannot reshape " + shape_to_string(shape_) + " to " +
                       shape_to_string(shape));
    }
    shape_ = std::move(shape);
  }

  bool same_shape(const BasicTensor& other) const noexcept { return shape_ == other.shape_; }

  friend bool operator==(const BasicTensor&, const BasicTensor&) = default;

 private:
  template <typename... Idx>
  std::size_t offset(Idx... idx) const noexcept {
    static_assert(sizeof...(Idx) >= 1 && sizeof...(Idx) <= 4);
    const std::size_t indices[] = {static_cast<std::size_t>(idx)...};
    std::size_t off = 0;
    for (std::size_t a = 0; a < sizeof...(Idx); ++a) off = off * shape_[a] + indices[a];
    return off;
  }

  Shape shape_;
  std::vector<T> data_;
};

using Tensor = BasicTensor<float>;
using TensorD = BasicTensor<double>;

/// Element-type conversion, used to lift float parameters into the
/// double-precision gradient-check path and back.
template <typename To, typename From>
BasicTensor<To> tensor_cast(const BasicTensor<From>& in) {
  std::vector<To> data(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) data[i] = static_cast<To>(in[i]);
  return BasicTensor<To>(in.shape(), std::move(data));
}

/// True when every element is finite.
template <typename T>
bool all_finite(const BasicTensor<T>& t) noexcept;

/// Throws ShapeError with `what` and both shapes if they differ.
void require_same_shape(const Shape& a, const Shape& b, const char* what);

}  // namespace specklenet

#endif  // SPECKLENET_TENSOR_HPP_
