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

#ifndef SPECKLENET_SPECKLE_HPP_
#define SPECKLENET_SPECKLE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "specklenet/preprocess.hpp"

namespace specklenet {

/// Parameters of one synthetic speckle image.
struct SpeckleParams {
  std::size_t grid = 64;      // output side in pixels
  double mask_radius = 0.1;   // pupil radius in cycles/pixel, (0, 0.5]
  double contrast = 1.0;      // [0, 1]; 0 gives a flat plane
  double background = 96.0;   // mean gray level, [0, 255]
  std::uint64_t seed = 0;
};

/// Throws Error on out-of-range fields.
void validate(const SpeckleParams& params);

/**
 * Fully developed speckle intensity on a grid x grid lattice, row-major.
 *
 * A circular-Gaussian complex field (independent unit-variance real and
 * imaginary parts per sample) models the rough-surface pupil; it is cut by
 * a circular aperture of radius mask_radius (cycles/pixel) and inverse
 * Fourier transformed to the sensor plane, where the intensity |E|^2 is
 * taken. Larger apertures give finer grains (mean grain ~ 1/mask_radius).
 */
std::vector<double> speckle_intensity(const SpeckleParams& params);

/// speckle_intensity mapped to gray levels:
///   round(background * (1 + contrast * (I / mean(I) - 1))), clamped to [0,255].
Plane synth_speckle(const SpeckleParams& params);

}  // namespace specklenet

#endif  // SPECKLENET_SPECKLE_HPP_
