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

#ifndef SPECKLENET_TRAINER_HPP_
#define SPECKLENET_TRAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specklenet/adamax.hpp"
#include "specklenet/checkpoint.hpp"
#include "specklenet/dataset.hpp"

namespace specklenet {

struct TrainConfig {
  std::filesystem::path data_dir;
  LaserColor laser = LaserColor::Green;
  std::string profile = "full";  // "full" (256) or "tiny" (64)
  std::size_t input_side = kFullProfileSide;
  std::size_t epochs = 100;
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  std::size_t batch_size = 32;
  double val_fraction = 0.2;
  std::uint64_t seed = 0;
  std::filesystem::path out_path = "model.spkl";
  std::filesystem::path history_path = "history.csv";
  std::optional<std::filesystem::path> remap_csv;
  bool crop_center = false;
};

/// Input side of a named profile ("full" 256, "tiny" 64).
std::optional<std::size_t> profile_side(const std::string& profile);

/// The configuration as a JSON object, stored in checkpoint metadata.
std::string config_to_json(const TrainConfig& config);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_acc = 0.0;
  double val_loss = 0.0;
  double val_acc = 0.0;
};

struct TrainResult {
  std::vector<EpochRecord> history;
  NetworkParams final_params;
  NetworkParams best_params;
  std::size_t best_epoch = 0;
};

/// Seeds derived from TrainConfig::seed for each random stage.
std::uint64_t network_seed(std::uint64_t seed);
std::uint64_t split_seed(std::uint64_t seed);
std::uint64_t epoch_seed(std::uint64_t seed, std::size_t epoch);

/**
 * Adamax training without file I/O. Training loss and accuracy are running
 * values over the epoch's batches (each sample scored before the update of
 * its batch); validation metrics are computed after the epoch. The best
 * epoch has the highest validation accuracy, ties going to lower
 * validation loss and then to the earlier epoch.
 */
TrainResult fit(const Dataset& train, const Dataset& val, const TrainConfig& config,
                const std::function<void(const EpochRecord&, const TrainResult&)>& on_epoch = {});

/// scan_dataset -> split_train_val -> fit, appending one history row per
/// epoch and saving the best-validation checkpoint to config.out_path.
TrainResult train(const TrainConfig& config);

std::string history_header();
std::string history_row(const EpochRecord& record);

}  // namespace specklenet

#endif  // SPECKLENET_TRAINER_HPP_
