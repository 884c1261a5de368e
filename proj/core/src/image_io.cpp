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

#include "specklenet/image_io.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "specklenet/error.hpp"

namespace specklenet {
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

// Reads one ASCII header integer, skipping whitespace and '#' comments.
std::size_t ppm_header_value(std::span<const std::uint8_t> bytes, std::size_t& pos, const char* what) {
  while (pos < bytes.size()) {
    if (is_space(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::size_t value = 0, digits = 0;
  while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
    value = value * 10 + (bytes[pos] - '0');
    if (++digits > 9) throw DecodeError(std::string("PPM ") + what + " is too large");
    ++pos;
  }
  if (digits == 0) throw DecodeError(std::string("PPM header is missing the ") + what);
  return value;
}

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

std::uint8_t paeth(std::uint8_t a, std::uint8_t b, std::uint8_t c) {
  const int p = int{a} + int{b} - int{c};
  const int pa = std::abs(p - int{a}), pb = std::abs(p - int{b}), pc = std::abs(p - int{c});
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

RawImage decode_ppm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw DecodeError("not a PPM file");
  if (bytes[1] != '6') {
    throw DecodeError(std::string("unsupported PNM variant P") + static_cast<char>(bytes[1]) +
                      " (only binary P6 is supported)");
  }
  std::size_t pos = 2;
  const std::size_t width = ppm_header_value(bytes, pos, "width");
  const std::size_t height = ppm_header_value(bytes, pos, "height");
  const std::size_t maxval = ppm_header_value(bytes, pos, "maxval");
  if (width == 0 || height == 0) throw DecodeError("PPM has zero width or height");
  if (maxval == 0 || maxval > 255) {
    throw DecodeError("unsupported PPM maxval " + std::to_string(maxval) + " (8-bit only)");
  }
  if (pos >= bytes.size() || !is_space(bytes[pos])) throw DecodeError("malformed PPM header");
  ++pos;
  const std::size_t n = width * height * 3;
  if (bytes.size() - pos < n) {
    throw DecodeError("PPM pixel data truncated: expected " + std::to_string(n) + " bytes, found " +
                      std::to_string(bytes.size() - pos));
  }
  RawImage img{width, height, 3, std::vector<std::uint8_t>(bytes.begin() + pos, bytes.begin() + pos + n)};
  if (maxval != 255) {
    for (auto& v : img.data) v = static_cast<std::uint8_t>((v * 255u + maxval / 2) / maxval);
  }
  return img;
}

RawImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0) {
    throw DecodeError("not a PNG file");
  }
  std::size_t pos = 8;
  std::size_t width = 0, height = 0, bpp = 0;
  bool have_header = false;
  std::vector<std::uint8_t> compressed;
  bool ended = false;
  while (!ended) {
    if (bytes.size() - pos < 12) throw DecodeError("PNG truncated before IEND");
    const std::uint32_t len = be32(bytes.data() + pos);
    const std::uint8_t* type = bytes.data() + pos + 4;
    if (bytes.size() - pos - 12 < len) throw DecodeError("PNG chunk truncated");
    const std::uint8_t* body = type + 4;
    const std::uint32_t stored_crc = be32(body + len);
    if (crc32(crc32(0L, Z_NULL, 0), type, len + 4) != stored_crc) {
      throw DecodeError("PNG chunk " + std::string(reinterpret_cast<const char*>(type), 4) +
                        " has a bad CRC");
    }
    const std::string name(reinterpret_cast<const char*>(type), 4);
    if (name == "IHDR") {
      if (len != 13) throw DecodeError("PNG IHDR has wrong length");
      width = be32(body);
      height = be32(body + 4);
      const std::uint8_t depth = body[8], color = body[9], interlace = body[12];
      if (depth != 8) {
        throw DecodeError("unsupported PNG bit depth " + std::to_string(depth) + " (8-bit only)");
      }
      if (color == 2) {
        bpp = 3;
      } else if (color == 6) {
        bpp = 4;
      } else {
        throw DecodeError("unsupported PNG color type " + std::to_string(color) +
                          " (RGB or RGBA only)");
      }
      if (interlace != 0) throw DecodeError("interlaced PNG is not supported");
      if (width == 0 || height == 0) throw DecodeError("PNG has zero width or height");
      have_header = true;
    } else if (name == "IDAT") {
      compressed.insert(compressed.end(), body, body + len);
    } else if (name == "IEND") {
      ended = true;
    } else if (!(type[0] & 0x20)) {
      throw DecodeError("unsupported critical PNG chunk " + name);
    }
    pos += 12 + len;
  }
  if (!have_header) throw DecodeError("PNG is missing IHDR");

  const std::size_t stride = width * bpp;
  std::vector<std::uint8_t> raw(height * (stride + 1));
  uLongf raw_len = static_cast<uLongf>(raw.size());
  const int rc = uncompress(raw.data(), &raw_len, compressed.data(), static_cast<uLong>(compressed.size()));
  if (rc != Z_OK || raw_len != raw.size()) throw DecodeError("PNG image data failed to inflate");

  std::vector<std::uint8_t> pixels(height * stride);
  for (std::size_t y = 0; y < height; ++y) {
    const std::uint8_t filter = raw[y * (stride + 1)];
    const std::uint8_t* src = raw.data() + y * (stride + 1) + 1;
    std::uint8_t* dst = pixels.data() + y * stride;
    const std::uint8_t* prev = y ? dst - stride : nullptr;
    for (std::size_t i = 0; i < stride; ++i) {
      const std::uint8_t a = i >= bpp ? dst[i - bpp] : 0;
      const std::uint8_t b = prev ? prev[i] : 0;
      const std::uint8_t c = (prev && i >= bpp) ? prev[i - bpp] : 0;
      std::uint8_t pred;
      switch (filter) {
        case 0: pred = 0; break;
        case 1: pred = a; break;
        case 2: pred = b; break;
        case 3: pred = static_cast<std::uint8_t>((int{a} + int{b}) / 2); break;
        case 4: pred = paeth(a, b, c); break;
        default: throw DecodeError("PNG row uses unknown filter " + std::to_string(filter));
      }
      dst[i] = static_cast<std::uint8_t>(src[i] + pred);
    }
  }

  RawImage img{width, height, 3, std::vector<std::uint8_t>(width * height * 3)};
  for (std::size_t p = 0; p < width * height; ++p)
    for (std::size_t ch = 0; ch < 3; ++ch) img.data[3 * p + ch] = pixels[bpp * p + ch];
  return img;
}

RawImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  try {
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P') return decode_ppm(bytes);
  } catch (const DecodeError& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
  throw DecodeError(path.string() + ": unrecognized image format (expected PPM P6 or PNG)");
}

void write_ppm(const std::filesystem::path& path, const RawImage& image) {
  if (image.channels != 3 || image.data.size() != image.width * image.height * 3) {
    throw ShapeError("write_ppm: image is not a consistent RGB buffer");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::string header =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace specklenet
