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

#include "specklenet/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>

namespace specklenet {

std::string_view to_string(LaserColor laser) noexcept {
  switch (laser) {
    case LaserColor::Red:
      return "red";
    case LaserColor::Green:
      return "green";
    case LaserColor::Blue:
      return "blue";
  }
  return "unknown";
}

std::optional<LaserColor> parse_laser_color(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "red") return LaserColor::Red;
  if (lower == "green") return LaserColor::Green;
  if (lower == "blue") return LaserColor::Blue;
  return std::nullopt;
}

Plane extract_channel(const RawImage& image, LaserColor laser) {
  if (image.channels != 3) {
    throw ShapeError("extract_channel: expected 3 channels, got " + std::to_string(image.channels));
  }
  if (image.data.size() != image.width * image.height * 3) {
    throw ShapeError("extract_channel: pixel buffer holds " + std::to_string(image.data.size()) +
                     " bytes for a " + std::to_string(image.width) + "x" +
                     std::to_string(image.height) + " RGB image");
  }
  Plane plane{image.width, image.height, std::vector<std::uint8_t>(image.width * image.height)};
  const std::size_t c = channel_index(laser);
  for (std::size_t i = 0; i < plane.data.size(); ++i) plane.data[i] = image.data[3 * i + c];
  return plane;
}

Plane resize_bilinear(const Plane& plane, std::size_t target_side) {
  if (target_side == 0) throw ShapeError("resize_bilinear: target side must be positive");
  if (plane.width == 0 || plane.height == 0) throw ShapeError("resize_bilinear: empty source plane");

  // With half-pixel centers the source coordinate of output i is
  // ((2i + 1) * source - target) / (2 * target), so every weight is an
  // exact fraction over 2 * target and the result can be rounded exactly.
  struct Tap {
    std::size_t lo, hi;
    std::uint64_t frac;  // numerator over 2 * target_side
  };
  const std::uint64_t den = 2 * static_cast<std::uint64_t>(target_side);
  auto taps = [&](std::size_t source) {
    std::vector<Tap> out(target_side);
    const std::int64_t last = static_cast<std::int64_t>(source - 1) * static_cast<std::int64_t>(den);
    for (std::size_t i = 0; i < target_side; ++i) {
      const std::int64_t s = static_cast<std::int64_t>((2 * i + 1) * source) - static_cast<std::int64_t>(target_side);
      const auto c = static_cast<std::uint64_t>(std::clamp<std::int64_t>(s, 0, last));
      const std::size_t lo = static_cast<std::size_t>(c / den);
      out[i] = {lo, std::min(lo + 1, source - 1), c - lo * den};
    }
    return out;
  };
  const std::vector<Tap> xs = taps(plane.width);
  const std::vector<Tap> ys = taps(plane.height);

  const std::uint64_t den2 = den * den;
  Plane out{target_side, target_side, std::vector<std::uint8_t>(target_side * target_side)};
  for (std::size_t y = 0; y < target_side; ++y) {
    const Tap& ty = ys[y];
    for (std::size_t x = 0; x < target_side; ++x) {
      const Tap& tx = xs[x];
      const std::uint64_t top = plane.at(ty.lo, tx.lo) * (den - tx.frac) + plane.at(ty.lo, tx.hi) * tx.frac;
      const std::uint64_t bottom = plane.at(ty.hi, tx.lo) * (den - tx.frac) + plane.at(ty.hi, tx.hi) * tx.frac;
      const std::uint64_t num = top * (den - ty.frac) + bottom * ty.frac;
      out.data[y * target_side + x] = static_cast<std::uint8_t>((num + den2 / 2) / den2);
    }
  }
  return out;
}

Plane crop_center(const Plane& plane, std::size_t side) {
  if (side == 0) throw ShapeError("crop_center: side must be positive");
  if (plane.width < side || plane.height < side) {
    throw ShapeError("crop_center: " + std::to_string(plane.width) + "x" +
                     std::to_string(plane.height) + " plane is smaller than " +
                     std::to_string(side));
  }
  const std::size_t x0 = (plane.width - side) / 2;
  const std::size_t y0 = (plane.height - side) / 2;
  Plane out{side, side, std::vector<std::uint8_t>(side * side)};
  for (std::size_t y = 0; y < side; ++y) {
    const auto* row = plane.data.data() + (y0 + y) * plane.width + x0;
    std::copy(row, row + side, out.data.begin() + static_cast<std::ptrdiff_t>(y * side));
  }
  return out;
}

Tensor normalize(const Plane& plane) {
  Tensor out({plane.height, plane.width, 1});
  for (std::size_t i = 0; i < plane.data.size(); ++i)
    out[i] = static_cast<float>(plane.data[i]) / 255.0f;
  return out;
}

Tensor preprocess(const RawImage& image, const PreprocessOptions& options) {
  const Plane plane = extract_channel(image, options.laser);
  if (options.resample == Resample::CropCenter) return normalize(crop_center(plane, options.side));
  return normalize(resize_bilinear(plane, options.side));
}

}  // namespace specklenet
