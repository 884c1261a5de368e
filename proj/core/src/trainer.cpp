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

#include "specklenet/trainer.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "specklenet/error.hpp"
#include "specklenet/metrics.hpp"
#include "specklenet/rng.hpp"

namespace specklenet {

std::optional<std::size_t> profile_side(const std::string& profile) {
  if (profile == "full") return kFullProfileSide;
  if (profile == "tiny") return kTinyProfileSide;
  return std::nullopt;
}

std::string config_to_json(const TrainConfig& c) {
  nlohmann::json j;
  j["data_dir"] = c.data_dir.string();
  j["laser"] = std::string(to_string(c.laser));
  j["profile"] = c.profile;
  j["input_side"] = c.input_side;
  j["epochs"] = c.epochs;
  j["lr"] = c.learning_rate;
  j["beta1"] = c.beta1;
  j["beta2"] = c.beta2;
  j["batch_size"] = c.batch_size;
  j["val_fraction"] = c.val_fraction;
  j["seed"] = c.seed;
  j["remap"] = c.remap_csv ? c.remap_csv->string() : std::string();
  j["crop_center"] = c.crop_center;
  return j.dump();
}

std::uint64_t network_seed(std::uint64_t seed) { return rng::mix_seed(seed, 0); }
std::uint64_t split_seed(std::uint64_t seed) { return rng::mix_seed(seed, 1); }
std::uint64_t epoch_seed(std::uint64_t seed, std::size_t epoch) { return rng::mix_seed(seed, 100 + epoch); }

std::string history_header() { return "epoch,train_loss,train_acc,val_loss,val_acc"; }

std::string history_row(const EpochRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f,%.6f", r.epoch, r.train_loss, r.train_acc, r.val_loss,
                r.val_acc);
  return buf;
}

TrainResult fit(const Dataset& train, const Dataset& val, const TrainConfig& config,
                const std::function<void(const EpochRecord&, const TrainResult&)>& on_epoch) {
  if (config.epochs < 1) throw Error("epochs must be at least 1");
  if (!(config.learning_rate > 0.0)) throw Error("learning rate must be positive");
  if (train.size() == 0) throw DatasetError("training set is empty");

  TrainResult result;
  result.final_params = build_network<float>(config.input_side, train.class_count(), network_seed(config.seed));
  NetworkParams& params = result.final_params;
  AdamaxState<float> state =
      adamax_init<float>(params.tensors(), {config.learning_rate, config.beta1, config.beta2, 1e-8});

  double best_acc = -1.0, best_loss = 0.0;
  std::vector<LabeledImage<float>> batch;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (const auto& indices : make_batches(train, config.batch_size, epoch_seed(config.seed, epoch))) {
      batch.clear();
      for (std::size_t i : indices) batch.push_back({&train.samples[i].image, train.samples[i].label});
      BatchGradients<float> g = loss_and_gradients<float>(params, batch);
      loss_sum += static_cast<double>(g.mean_loss) * static_cast<double>(batch.size());
      correct += g.correct;
      adamax_step<float>(params.tensors(), g.grads.tensors(), state);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(train.size());
    record.train_acc = static_cast<double>(correct) / static_cast<double>(train.size());
    if (val.size() > 0) {
      const Evaluation ev = evaluate(params, val);
      record.val_loss = ev.mean_loss;
      record.val_acc = ev.report.accuracy;
    }
    result.history.push_back(record);

    // without a validation split the latest epoch is kept
    if (val.size() == 0 || record.val_acc > best_acc ||
        (record.val_acc == best_acc && record.val_loss < best_loss)) {
      best_acc = record.val_acc;
      best_loss = record.val_loss;
      result.best_params = params;
      result.best_epoch = epoch;
    }
    if (on_epoch) on_epoch(record, result);
  }
  return result;
}

TrainResult train(const TrainConfig& config) {
  ScanOptions scan;
  scan.preprocess = {config.laser, config.input_side, config.crop_center ? Resample::CropCenter : Resample::Resize};
  scan.remap_csv = config.remap_csv;
  const Dataset all = scan_dataset(config.data_dir, scan);
  auto [train_set, val_set] = split_train_val(all, config.val_fraction, split_seed(config.seed));

  std::ofstream history(config.history_path, std::ios::trunc);
  if (!history) throw IoError("cannot open " + config.history_path.string() + " for writing");
  history << history_header() << '\n';

  CheckpointMetadata meta;
  meta.profile = config.profile;
  meta.class_names = all.class_names;
  meta.laser = config.laser;
  meta.seed = config.seed;
  meta.config_json = config_to_json(config);

  std::size_t saved_epoch = 0;
  return fit(train_set, val_set, config, [&](const EpochRecord& record, const TrainResult& so_far) {
    history << history_row(record) << '\n' << std::flush;
    if (!history) throw IoError("failed writing " + config.history_path.string());
    if (so_far.best_epoch != saved_epoch) {
      meta.epoch = static_cast<std::uint32_t>(so_far.best_epoch);
      save_checkpoint(so_far.best_params, meta, config.out_path);
      saved_epoch = so_far.best_epoch;
    }
  });
}

}  // namespace specklenet
