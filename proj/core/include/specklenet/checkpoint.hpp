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

#ifndef SPECKLENET_CHECKPOINT_HPP_
#define SPECKLENET_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "specklenet/error.hpp"
#include "specklenet/model.hpp"
#include "specklenet/preprocess.hpp"

namespace specklenet {

// Binary layout, all integers little-endian:
//
//   "SPKL" | u32 version (1) | u32 input_side | u32 class_count | u32 tensor_count
//   per tensor: u16 name_len | name (UTF-8) | u8 rank | u32 dims[rank] | f32 data[]
//   u32 json_len | metadata JSON (UTF-8)

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public Error {
 public:
  enum class Kind { NotACheckpoint, UnsupportedVersion, Truncated, Inconsistent };

  CheckpointError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct CheckpointMetadata {
  std::string profile;  // "full", "tiny" or "custom"
  std::vector<std::string> class_names;
  LaserColor laser = LaserColor::Green;
  std::uint64_t seed = 0;
  std::uint32_t epoch = 0;
  /// Training configuration echoed as a JSON object; empty for none.
  std::string config_json;

  friend bool operator==(const CheckpointMetadata&, const CheckpointMetadata&) = default;
};

struct Checkpoint {
  NetworkParams params;
  CheckpointMetadata metadata;
};

/// Throws IoError if the file cannot be written.
void save_checkpoint(const NetworkParams& params, const CheckpointMetadata& metadata,
                     const std::filesystem::path& path);

/// Throws IoError when unreadable and CheckpointError for malformed content.
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// In-memory forms of the two calls above.
std::vector<std::uint8_t> encode_checkpoint(const NetworkParams& params,
                                            const CheckpointMetadata& metadata);
Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes);

}  // namespace specklenet

#endif  // SPECKLENET_CHECKPOINT_HPP_
