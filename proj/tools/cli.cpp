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

#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "specklenet/checkpoint.hpp"
#include "specklenet/dataset.hpp"
#include "specklenet/image_io.hpp"
#include "specklenet/metrics.hpp"
#include "specklenet/trainer.hpp"

namespace specklenet::cli {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kLaserNames = {"red", "green", "blue"};

std::optional<LaserColor> laser_flag(const std::string& value) {
  return value.empty() ? std::nullopt : parse_laser_color(value);
}

struct EvalArgs {
  std::string model;
  std::string data;
  std::string report = "report.csv";
  std::string matrix = "confusion.csv";
  std::string laser;
  std::optional<std::string> remap;
  bool force = false;
  bool crop_center = false;
};

struct PredictArgs {
  std::string model;
  std::string image;
  std::string laser;
  bool crop_center = false;
};

struct SynthArgs {
  std::size_t classes = 8;
  std::size_t per_class = 50;
  std::size_t side = kTinyProfileSide;
  std::string out;
  std::string laser = "green";
  std::uint64_t seed = 0;
};

bool checkpoint_crop_center(const CheckpointMetadata& meta) {
  if (meta.config_json.empty()) return false;
  const auto j = nlohmann::json::parse(meta.config_json, nullptr, false);
  return j.is_object() && j.value("crop_center", false);
}

PreprocessOptions preprocess_for(const Checkpoint& ck, LaserColor laser, bool crop_center) {
  const bool crop = crop_center || checkpoint_crop_center(ck.metadata);
  return {laser, ck.params.input_side(), crop ? Resample::CropCenter : Resample::Resize};
}

int cmd_train(const TrainConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const TrainResult result = train(config);
  const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const EpochRecord& last = result.history.back();
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "trained %zu epochs in %.1f s: train_loss %.4f train_acc %.4f val_loss %.4f val_acc %.4f\n"
                "best epoch %zu saved to %s\n",
                result.history.size(), seconds, last.train_loss, last.train_acc, last.val_loss, last.val_acc,
                result.best_epoch, config.out_path.string().c_str());
  out << buf;
  return kExitOk;
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  const Checkpoint ck = load_checkpoint(args.model);
  const LaserColor laser = laser_flag(args.laser).value_or(ck.metadata.laser);

  ScanOptions scan;
  scan.preprocess = preprocess_for(ck, laser, args.crop_center);
  if (args.remap) scan.remap_csv = fs::path(*args.remap);
  if (laser != ck.metadata.laser && !args.force) {
    throw LaserMismatchError("checkpoint was trained with --laser " + std::string(to_string(ck.metadata.laser)) +
                             " but evaluation requested --laser " + std::string(to_string(laser)) +
                             " (pass --force to override)");
  }
  const Dataset ds = scan_dataset(args.data, scan);
  if (ds.class_names != ck.metadata.class_names) {
    throw DatasetError("dataset classes do not match the checkpoint's " +
                       std::to_string(ck.metadata.class_names.size()) + " classes");
  }

  const Evaluation ev = evaluate(ck.params, ds, {ck.metadata.laser, args.force});
  write_report_csv(args.report, ev.report);
  write_confusion_csv(args.matrix, ev.matrix);
  out << format_report(ev.report);
  char buf[128];
  std::snprintf(buf, sizeof buf, "accuracy %.4f\nmacro_f1 %.4f\n", round4(ev.report.accuracy),
                round4(ev.report.macro_f1));
  out << buf;
  return kExitOk;
}

int cmd_predict(const PredictArgs& args, std::ostream& out) {
  const Checkpoint ck = load_checkpoint(args.model);
  RawImage image;
  try {
    image = load_image(args.image);
  } catch (const IoError& e) {
    throw DecodeError(e.what());
  }
  const LaserColor laser = laser_flag(args.laser).value_or(ck.metadata.laser);
  const Tensor input = preprocess(image, preprocess_for(ck, laser, args.crop_center));
  const Prediction p = predict(ck.params, input);
  char buf[32];
  std::snprintf(buf, sizeof buf, " %.4f\n", p.probability);
  out << ck.metadata.class_names.at(p.class_index) << buf;
  return kExitOk;
}

int cmd_synth(const SynthArgs& args, std::ostream& out) {
  const std::size_t n = synth_dataset({args.classes, args.per_class, args.side, args.out, *parse_laser_color(args.laser), args.seed});
  out << "wrote " << n << " images in " << args.classes << " classes to " << args.out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speckle-pattern material classifier: synthesize data, train, evaluate, predict."};
  app.name(args.empty() ? "specklenet" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);

  TrainConfig train_config;
  std::string train_profile = "full";
  std::string train_remap;
  std::string train_laser = "green";
  auto* train_cmd = app.add_subcommand("train", "Train on a class-per-folder image tree");
  train_cmd->add_option("--data", train_config.data_dir, "Dataset root (one folder per class)")->required();
  train_cmd->add_option("--laser", train_laser, "Laser color whose channel is used")
      ->check(CLI::IsMember(kLaserNames, CLI::ignore_case))
      ->capture_default_str();
  train_cmd->add_option("--profile", train_profile, "Input profile: full (256 px) or tiny (64 px)")
      ->check(CLI::IsMember({"full", "tiny"}))
      ->capture_default_str();
  train_cmd->add_option("--epochs", train_config.epochs, "Training epochs")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  train_cmd->add_option("--lr", train_config.learning_rate, "Adamax learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--beta1", train_config.beta1, "Adamax first-moment decay")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  train_cmd->add_option("--beta2", train_config.beta2, "Adamax infinity-norm decay")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train_cmd->add_option("--batch-size", train_config.batch_size, "Mini-batch size")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  train_cmd->add_option("--val-fraction", train_config.val_fraction, "Per-class validation fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  train_cmd->add_option("--seed", train_config.seed, "Seed for initialization, split and shuffling")
      ->capture_default_str();
  train_cmd->add_option("--out", train_config.out_path, "Checkpoint path (best validation epoch)")
      ->capture_default_str();
  train_cmd->add_option("--history", train_config.history_path, "Per-epoch history CSV")->capture_default_str();
  train_cmd->add_option("--remap", train_remap, "CSV mapping variant_folder,material");
  train_cmd->add_flag("--crop-center", train_config.crop_center, "Crop the central square instead of resizing");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on an image tree");
  eval_cmd->add_option("--model", eval_args.model, "Checkpoint path")->required();
  eval_cmd->add_option("--data", eval_args.data, "Dataset root (one folder per class)")->required();
  eval_cmd->add_option("--report", eval_args.report, "Per-class report CSV")->capture_default_str();
  eval_cmd->add_option("--matrix", eval_args.matrix, "Confusion matrix CSV")->capture_default_str();
  eval_cmd->add_option("--laser", eval_args.laser, "Laser color (default: the checkpoint's)")
      ->check(CLI::IsMember(kLaserNames, CLI::ignore_case));
  eval_cmd->add_option("--remap", eval_args.remap, "CSV mapping variant_folder,material");
  eval_cmd->add_flag("--force", eval_args.force, "Allow a laser color different from the checkpoint's");
  eval_cmd->add_flag("--crop-center", eval_args.crop_center, "Crop the central square instead of resizing");

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand("predict", "Classify one image");
  predict_cmd->add_option("--model", predict_args.model, "Checkpoint path")->required();
  predict_cmd->add_option("--image", predict_args.image, "PPM or PNG image")->required();
  predict_cmd->add_option("--laser", predict_args.laser, "Laser color (default: the checkpoint's)")
      ->check(CLI::IsMember(kLaserNames, CLI::ignore_case));
  predict_cmd->add_flag("--crop-center", predict_args.crop_center, "Crop the central square instead of resizing");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic speckle dataset");
  synth_cmd->add_option("--classes", synth_args.classes, "Number of classes (at least 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000}))
      ->capture_default_str();
  synth_cmd->add_option("--per-class", synth_args.per_class, "Images per class")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  synth_cmd->add_option("--side", synth_args.side, "Image side in pixels")
      ->check(CLI::Range(std::size_t{1}, std::size_t{8192}))
      ->capture_default_str();
  synth_cmd->add_option("--out", synth_args.out, "Output directory")->required();
  synth_cmd->add_option("--laser", synth_args.laser, "Channel that carries the speckle")
      ->check(CLI::IsMember(kLaserNames, CLI::ignore_case))
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.seed, "Generator seed")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*train_cmd) {
      const auto side = profile_side(train_profile);
      train_config.profile = train_profile;
      train_config.laser = *parse_laser_color(train_laser);
      train_config.input_side = *side;
      if (!train_remap.empty()) train_config.remap_csv = fs::path(train_remap);
      if (train_config.val_fraction <= 0.0 || train_config.val_fraction >= 1.0) {
        err << "error: --val-fraction must lie strictly between 0 and 1\n";
        return kExitUsage;
      }
      return cmd_train(train_config, out);
    }
    if (*eval_cmd) return cmd_eval(eval_args, out);
    if (*predict_cmd) return cmd_predict(predict_args, out);
    if (*synth_cmd) return cmd_synth(synth_args, out);
  } catch (const LaserMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLaserMismatch;
  } catch (const DatasetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DecodeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CheckpointError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace specklenet::cli
