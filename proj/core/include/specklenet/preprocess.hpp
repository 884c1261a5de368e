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

#ifndef SPECKLENET_PREPROCESS_HPP_
#define SPECKLENET_PREPROCESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "specklenet/tensor.hpp"

namespace specklenet {

/// Color of the laser that produced the speckle; selects one RGB plane.
enum class LaserColor : std::uint8_t { Red = 0, Green = 1, Blue = 2 };

/// RGB byte-order channel of the laser color: red 0, green 1, blue 2.
constexpr std::size_t channel_index(LaserColor laser) noexcept {
  return static_cast<std::size_t>(laser);
}

std::string_view to_string(LaserColor laser) noexcept;
/// Accepts "red", "green", "blue" (case-insensitive).
std::optional<LaserColor> parse_laser_color(std::string_view name);

/// 8-bit interleaved image, row-major. Decoders always produce RGB.
struct RawImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 3;
  std::vector<std::uint8_t> data;

  friend bool operator==(const RawImage&, const RawImage&) = default;
};

/// Single 8-bit channel, row-major.
struct Plane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(std::size_t y, std::size_t x) const { return data[y * width + x]; }
  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Copies the plane of the laser's channel; the other two are discarded.
Plane extract_channel(const RawImage& image, LaserColor laser);

/// Bilinear resampling to target_side x target_side with half-pixel centers
/// (source coordinate = (dst + 0.5) * scale - 0.5, clamped at the borders),
/// rounded half-up back to 8 bits.
Plane resize_bilinear(const Plane& plane, std::size_t target_side);

/// Central side x side window; the plane must be at least that large.
Plane crop_center(const Plane& plane, std::size_t side);

/// value / 255 as float, shaped [height, width, 1].
Tensor normalize(const Plane& plane);

enum class Resample : std::uint8_t { Resize, CropCenter };

struct PreprocessOptions {
  LaserColor laser = LaserColor::Green;
  std::size_t side = 256;
  Resample resample = Resample::Resize;
};

/// extract_channel -> resize_bilinear (or crop_center) -> normalize.
Tensor preprocess(const RawImage& image, const PreprocessOptions& options);

}  // namespace specklenet

#endif  // SPECKLENET_PREPROCESS_HPP_
