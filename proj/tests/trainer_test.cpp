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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "specklenet/trainer.hpp"
#include "test_support.hpp"

namespace specklenet {
namespace {

using testing::TempDir;

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class TrainerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SynthConfig synth;
    synth.class_count = 2;
    synth.per_class = 5;
    synth.side = 46;
    synth.seed = 3;
    synth.out_dir = dir / "data";
    synth_dataset(synth);
    config.data_dir = dir / "data";
    config.profile = "custom";
    config.input_side = 46;
    config.epochs = 3;
    config.batch_size = 4;
    config.seed = 5;
    config.out_path = dir / "model.spkl";
    config.history_path = dir / "history.csv";
  }

  TempDir dir;
  TrainConfig config;
};

TEST(TrainConfigTest, ProfilesAndSeeds) {
  EXPECT_EQ(profile_side("full"), 256u);
  EXPECT_EQ(profile_side("tiny"), 64u);
  EXPECT_FALSE(profile_side("huge").has_value());
  EXPECT_NE(network_seed(1), split_seed(1));
  EXPECT_NE(epoch_seed(1, 1), epoch_seed(1, 2));
  const TrainConfig defaults;
  EXPECT_EQ(defaults.epochs, 100u);
  EXPECT_EQ(defaults.learning_rate, 0.001);
  EXPECT_EQ(defaults.batch_size, 32u);
  EXPECT_EQ(defaults.val_fraction, 0.2);
  EXPECT_EQ(defaults.input_side, 256u);
}

TEST(TrainConfigTest, HistoryFormat) {
  EXPECT_EQ(history_header(), "epoch,train_loss,train_acc,val_loss,val_acc");
  EXPECT_EQ(history_row({3, 0.5, 0.75, 1.25, 0.5}), "3,0.500000,0.750000,1.250000,0.500000");
}

TEST_F(TrainerTest, WritesHistoryAndBestCheckpoint) {
  const TrainResult r = train(config);
  ASSERT_EQ(r.history.size(), 3u);
  for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(r.history[e].epoch, e + 1);

  const auto lines = lines_of(config.history_path);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], history_header());
  EXPECT_EQ(lines[2], history_row(r.history[1]));

  const Checkpoint ck = load_checkpoint(config.out_path);
  EXPECT_EQ(ck.params, r.best_params);
  EXPECT_EQ(ck.metadata.epoch, r.best_epoch);
  EXPECT_EQ(ck.metadata.class_names, (std::vector<std::string>{"class_00", "class_01"}));
  EXPECT_EQ(ck.metadata.laser, LaserColor::Green);
  EXPECT_EQ(ck.metadata.seed, 5u);
  const auto json = nlohmann::json::parse(ck.metadata.config_json);
  EXPECT_EQ(json.at("epochs"), 3);
  EXPECT_EQ(json.at("input_side"), 46);
  EXPECT_EQ(json.at("lr"), 0.001);
}

TEST_F(TrainerTest, BestEpochRule) {
  const TrainResult r = train(config);
  const EpochRecord& best = r.history[r.best_epoch - 1];
  for (const EpochRecord& e : r.history) {
    EXPECT_LE(e.val_acc, best.val_acc);
    if (e.val_acc == best.val_acc) {
      EXPECT_GE(e.val_loss, best.val_loss);
      if (e.val_loss == best.val_loss) {
        EXPECT_GE(e.epoch, best.epoch);
      }
    }
  }
}

TEST_F(TrainerTest, NoValidationKeepsLastEpoch) {
  ScanOptions scan;
  scan.preprocess = {LaserColor::Green, 46, Resample::Resize};
  const Dataset all = scan_dataset(config.data_dir, scan);
  Dataset none;
  none.class_names = all.class_names;
  const TrainResult r = fit(all, none, config);
  EXPECT_EQ(r.best_epoch, 3u);
  EXPECT_EQ(r.best_params, r.final_params);
}

TEST_F(TrainerTest, BitReproducible) {
  const TrainResult a = train(config);
  const auto bytes_a = testing::read_bytes(config.out_path);
  const auto hist_a = testing::read_bytes(config.history_path);
  const TrainResult b = train(config);
  EXPECT_EQ(a.final_params, b.final_params);
  EXPECT_EQ(bytes_a, testing::read_bytes(config.out_path));
  EXPECT_EQ(hist_a, testing::read_bytes(config.history_path));
  config.seed = 6;
  EXPECT_NE(train(config).final_params, a.final_params);
}

TEST_F(TrainerTest, RunningTrainMetricsUsePreUpdateScores) {
  // With one batch per epoch the running loss is the loss of the weights
  // at the start of that epoch.
  config.batch_size = 64;
  config.epochs = 2;
  ScanOptions scan;
  scan.preprocess = {LaserColor::Green, 46, Resample::Resize};
  const Dataset all = scan_dataset(config.data_dir, scan);
  const auto [tr, va] = split_train_val(all, 0.2, split_seed(config.seed));
  const TrainResult r = fit(tr, va, config);
  const NetworkParams init = build_network<float>(46, 2, network_seed(config.seed));
  std::vector<LabeledImage<float>> batch;
  const auto batches = make_batches(tr, 64, epoch_seed(config.seed, 1));
  for (std::size_t i : batches[0])
    batch.push_back({&tr.samples[i].image, tr.samples[i].label});
  const auto g = loss_and_gradients<float>(init, batch);
  EXPECT_NEAR(r.history[0].train_loss, g.mean_loss, 1e-6);
  EXPECT_EQ(r.history[0].train_acc, double(g.correct) / double(tr.size()));
}

TEST_F(TrainerTest, RejectsBadConfig) {
  config.epochs = 0;
  EXPECT_THROW(train(config), Error);
  config.epochs = 1;
  config.learning_rate = 0.0;
  EXPECT_THROW(train(config), Error);
  config.learning_rate = 0.001;
  config.data_dir = dir / "nothing";
  EXPECT_THROW(train(config), DatasetError);
}

}  // namespace
}  // namespace specklenet
