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

#ifndef SPECKLENET_DATASET_HPP_
#define SPECKLENET_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specklenet/preprocess.hpp"
#include "specklenet/speckle.hpp"
#include "specklenet/tensor.hpp"

namespace specklenet {

struct Sample {
  Tensor image;  // [side, side, 1]
  std::size_t label = 0;
  std::filesystem::path source;
};

struct Dataset {
  std::vector<std::string> class_names;  // sorted, unique
  std::vector<Sample> samples;
  LaserColor laser = LaserColor::Green;
  std::size_t side = 0;
  std::uint64_t seed = 0;  // seed of the split that produced this set, 0 if none
  /// Files passed over by a scan with skip_undecodable set.
  std::vector<std::filesystem::path> skipped;

  std::size_t class_count() const noexcept { return class_names.size(); }
  std::size_t size() const noexcept { return samples.size(); }
};

struct ScanOptions {
  PreprocessOptions preprocess;
  /// Two-column CSV (variant_folder,material) merging folders into classes.
  std::optional<std::filesystem::path> remap_csv;
  /// Skip undecodable files instead of failing the whole scan.
  bool skip_undecodable = false;
};

/// Reads a remap CSV. An optional first row "variant_folder,material" is
/// treated as a header.
std::map<std::string, std::string> load_remap(const std::filesystem::path& path);

/**
 * Loads root/<class>/<image>.{ppm,png}. Each immediate subdirectory is a
 * class (after the optional remap); class names are sorted and files are
 * visited in sorted path order, so the result does not depend on directory
 * enumeration order. Throws DatasetError for an unusable tree and
 * DecodeError for a bad file unless skip_undecodable is set.
 */
Dataset scan_dataset(const std::filesystem::path& root, const ScanOptions& options);

/// Stratified split: per class, a seeded shuffle sends max(1, floor(f * n))
/// samples to validation. Both halves keep the original sample order.
std::pair<Dataset, Dataset> split_train_val(const Dataset& dataset, double val_fraction,
                                            std::uint64_t seed);

/// A seeded permutation of [0, sample_count) cut into batches; the last
/// batch may be short.
std::vector<std::vector<std::size_t>> make_batches(std::size_t sample_count, std::size_t batch_size,
                                                   std::uint64_t epoch_seed);
inline std::vector<std::vector<std::size_t>> make_batches(const Dataset& dataset,
                                                          std::size_t batch_size,
                                                          std::uint64_t epoch_seed) {
  return make_batches(dataset.size(), batch_size, epoch_seed);
}

// ---------------------------------------------------------------------------
// Synthetic data

struct SynthConfig {
  std::size_t class_count = 8;
  std::size_t per_class = 50;
  std::size_t side = 64;
  std::filesystem::path out_dir;
  LaserColor laser = LaserColor::Green;
  std::uint64_t seed = 0;
};

/// Speckle parameters of class k out of class_count (seed left at 0).
/// mask_radius cycles through {0.05, 0.1, 0.2, 0.4}, contrast alternates
/// between 1.0 and 0.6 every four classes, and the background level steps
/// evenly from 64 to 160.
SpeckleParams synth_class_params(std::size_t k, std::size_t class_count, std::size_t side);

/// Folder name of class k: "class_" plus a zero-padded index.
std::string synth_class_name(std::size_t k, std::size_t class_count);

/// Writes out_dir/<class>/img_NNNN.ppm and out_dir/manifest.csv
/// (path,class,seed,mask_radius,contrast). The speckle plane goes into the
/// laser's channel; the other two channels hold independent noise in
/// [0, 20]. Returns the number of images written.
std::size_t synth_dataset(const SynthConfig& config);

}  // namespace specklenet

#endif  // SPECKLENET_DATASET_HPP_
