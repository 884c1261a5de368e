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

#include "specklenet/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"

namespace specklenet {
namespace {

constexpr char kMagic[4] = {'S', 'P', 'K', 'L'};

using Kind = CheckpointError::Kind;

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& in) : in_(in) {}

  // `context` names what was being read when the data ran out.
  void need(std::size_t n, const std::string& context) const {
    if (in_.size() - pos_ < n) {
      throw CheckpointError(Kind::Truncated, "checkpoint truncated while reading " + context);
    }
  }
  std::uint8_t u8(const std::string& context) {
    need(1, context);
    return in_[pos_++];
  }
  std::uint16_t u16(const std::string& context) {
    need(2, context);
    std::uint16_t v = static_cast<std::uint16_t>(in_[pos_] | (in_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(const std::string& context) {
    need(4, context);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32(const std::string& context) { return std::bit_cast<float>(u32(context)); }
  std::string str(std::size_t n, const std::string& context) {
    need(n, context);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& in_;
  std::size_t pos_ = 0;
};

std::string metadata_json(const CheckpointMetadata& meta) {
  nlohmann::json j;
  j["profile"] = meta.profile;
  j["class_names"] = meta.class_names;
  j["laser"] = std::string(to_string(meta.laser));
  j["seed"] = meta.seed;
  j["epoch"] = meta.epoch;
  j["config"] = meta.config_json.empty() ? nlohmann::json::object()
                                         : nlohmann::json::parse(meta.config_json);
  return j.dump();
}

CheckpointMetadata parse_metadata(const std::string& text) {
  CheckpointMetadata meta;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    meta.profile = j.at("profile").get<std::string>();
    meta.class_names = j.at("class_names").get<std::vector<std::string>>();
    const auto laser = parse_laser_color(j.at("laser").get<std::string>());
    if (!laser) throw CheckpointError(Kind::Inconsistent, "checkpoint metadata has unknown laser color");
    meta.laser = *laser;
    meta.seed = j.at("seed").get<std::uint64_t>();
    meta.epoch = j.at("epoch").get<std::uint32_t>();
    const auto& config = j.at("config");
    meta.config_json = config.empty() ? std::string() : config.dump();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(Kind::Inconsistent, std::string("checkpoint metadata is invalid: ") + e.what());
  }
  return meta;
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const NetworkParams& params,
                                            const CheckpointMetadata& metadata) {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(params.input_side()));
  w.u32(static_cast<std::uint32_t>(params.class_count()));
  w.u32(static_cast<std::uint32_t>(params.tensors().size()));
  for (std::size_t i = 0; i < params.tensors().size(); ++i) {
    const Tensor& t = params.tensors()[i];
    const std::string_view name = NetworkParams::tensor_name(i);
    w.u16(static_cast<std::uint16_t>(name.size()));
    w.bytes(name.data(), name.size());
    w.u8(static_cast<std::uint8_t>(t.rank()));
    for (std::size_t d : t.shape()) w.u32(static_cast<std::uint32_t>(d));
    for (float v : t.data()) w.f32(v);
  }
  const std::string json = metadata_json(metadata);
  w.u32(static_cast<std::uint32_t>(json.size()));
  w.bytes(json.data(), json.size());
  return w.take();
}

Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw CheckpointError(Kind::NotACheckpoint, "not a checkpoint (bad magic bytes)");
  }
  Reader r(bytes);
  r.str(sizeof kMagic, "magic");
  const std::uint32_t version = r.u32("header");
  if (version != kCheckpointVersion) {
    throw CheckpointError(Kind::UnsupportedVersion,
                          "unsupported checkpoint version " + std::to_string(version) +
                              " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  const std::uint32_t input_side = r.u32("header");
  const std::uint32_t class_count = r.u32("header");
  const std::uint32_t tensor_count = r.u32("header");

  std::array<Shape, NetworkParams::kTensorCount> expected;
  try {
    expected = NetworkParams::expected_shapes(input_side, class_count);
  } catch (const ShapeError& e) {
    throw CheckpointError(Kind::Inconsistent, std::string("checkpoint header: ") + e.what());
  }
  if (tensor_count != NetworkParams::kTensorCount) {
    throw CheckpointError(Kind::Inconsistent, "checkpoint holds " + std::to_string(tensor_count) +
                                                  " tensors, expected " +
                                                  std::to_string(NetworkParams::kTensorCount));
  }

  Checkpoint ck{NetworkParams(input_side, class_count), {}};
  for (std::size_t i = 0; i < tensor_count; ++i) {
    const std::string expected_name(NetworkParams::tensor_name(i));
    const std::string context = "tensor '" + expected_name + "'";
    const std::uint16_t name_len = r.u16(context);
    const std::string name = r.str(name_len, context);
    if (name != expected_name) {
      throw CheckpointError(Kind::Inconsistent, "checkpoint tensor " + std::to_string(i) +
                                                    " is named '" + name + "', expected '" +
                                                    expected_name + "'");
    }
    const std::uint8_t rank = r.u8(context);
    Shape shape(rank);
    for (auto& d : shape) d = r.u32(context);
    if (shape != expected[i]) {
      throw CheckpointError(Kind::Inconsistent, "checkpoint tensor '" + name + "' has shape " +
                                                    shape_to_string(shape) + ", expected " +
                                                    shape_to_string(expected[i]) + " for input side " +
                                                    std::to_string(input_side));
    }
    Tensor& t = ck.params.tensors()[i];
    r.need(t.size() * 4, context);
    for (float& v : t.data()) v = r.f32(context);
  }

  const std::uint32_t json_len = r.u32("metadata");
  ck.metadata = parse_metadata(r.str(json_len, "metadata"));
  if (r.remaining() != 0) {
    throw CheckpointError(Kind::Inconsistent,
                          std::to_string(r.remaining()) + " trailing bytes after checkpoint metadata");
  }
  if (ck.metadata.class_names.size() != class_count) {
    throw CheckpointError(Kind::Inconsistent,
                          "checkpoint lists " + std::to_string(ck.metadata.class_names.size()) +
                              " class names for " + std::to_string(class_count) + " classes");
  }
  return ck;
}

void save_checkpoint(const NetworkParams& params, const CheckpointMetadata& metadata,
                     const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_checkpoint(params, metadata);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace specklenet
