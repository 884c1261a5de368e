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

#ifndef SPECKLENET_IMAGE_IO_HPP_
#define SPECKLENET_IMAGE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>

#include "specklenet/preprocess.hpp"

namespace specklenet {

/// Decodes binary PPM (P6, maxval <= 255) or PNG (8-bit RGB/RGBA,
/// non-interlaced; alpha is dropped), picked by file signature. Throws
/// IoError if unreadable and DecodeError for anything else it rejects.
RawImage load_image(const std::filesystem::path& path);

RawImage decode_ppm(std::span<const std::uint8_t> bytes);
RawImage decode_png(std::span<const std::uint8_t> bytes);

/// Writes a P6 file with maxval 255.
void write_ppm(const std::filesystem::path& path, const RawImage& image);

}  // namespace specklenet

#endif  // SPECKLENET_IMAGE_IO_HPP_
