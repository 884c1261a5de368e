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

#include "specklenet/speckle.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "specklenet/error.hpp"
#include "specklenet/rng.hpp"

namespace specklenet {
namespace {

double signed_frequency(std::size_t k, std::size_t n) {
  const auto ki = static_cast<double>(k);
  return (k <= n / 2 ? ki : ki - static_cast<double>(n)) / static_cast<double>(n);
}

}  // namespace

void validate(const SpeckleParams& p) {
  if (p.grid == 0) throw Error("speckle grid must be positive");
  if (!(p.mask_radius > 0.0 && p.mask_radius <= 0.5)) {
    throw Error("speckle mask_radius must lie in (0, 0.5], got " + std::to_string(p.mask_radius));
  }
  if (!(p.contrast >= 0.0 && p.contrast <= 1.0)) {
    throw Error("speckle contrast must lie in [0, 1], got " + std::to_string(p.contrast));
  }
  if (!(p.background >= 0.0 && p.background <= 255.0)) {
    throw Error("speckle background must lie in [0, 255], got " + std::to_string(p.background));
  }
}

std::vector<double> speckle_intensity(const SpeckleParams& p) {
  validate(p);
  const std::size_t n = p.grid;
  using Complex = std::complex<double>;

  rng::Engine engine(p.seed);
  std::vector<Complex> field(n * n);
  for (std::size_t y = 0; y < n; ++y) {
    const double fy = signed_frequency(y, n);
    for (std::size_t x = 0; x < n; ++x) {
      const auto [re, im] = rng::normal_pair(engine);
      const double fx = signed_frequency(x, n);
      field[y * n + x] = (fx * fx + fy * fy <= p.mask_radius * p.mask_radius) ? Complex(re, im) : Complex();
    }
  }

  // Separable 2-D inverse transform: rows, then columns.
  Eigen::FFT<double> fft;
  std::vector<Complex> line(n), out(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::copy_n(field.begin() + static_cast<std::ptrdiff_t>(y * n), n, line.begin());
    fft.inv(out, line);
    std::copy(out.begin(), out.end(), field.begin() + static_cast<std::ptrdiff_t>(y * n));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) line[y] = field[y * n + x];
    fft.inv(out, line);
    for (std::size_t y = 0; y < n; ++y) field[y * n + x] = out[y];
  }

  std::vector<double> intensity(n * n);
  for (std::size_t i = 0; i < intensity.size(); ++i) intensity[i] = std::norm(field[i]);
  return intensity;
}

Plane synth_speckle(const SpeckleParams& p) {
  const std::vector<double> intensity = speckle_intensity(p);
  double mean = 0.0;
  for (double v : intensity) mean += v;
  mean /= static_cast<double>(intensity.size());

  Plane plane{p.grid, p.grid, std::vector<std::uint8_t>(intensity.size())};
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    const double relative = mean > 0.0 ? intensity[i] / mean : 1.0;
    const double level = p.background * (1.0 + p.contrast * (relative - 1.0));
    plane.data[i] = static_cast<std::uint8_t>(std::clamp(std::floor(level + 0.5), 0.0, 255.0));
  }
  return plane;
}

}  // namespace specklenet
