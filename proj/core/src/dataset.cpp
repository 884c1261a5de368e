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

#include "specklenet/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include "specklenet/error.hpp"
#include "specklenet/image_io.hpp"
#include "specklenet/rng.hpp"

namespace specklenet {
namespace fs = std::filesystem;
namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".ppm" || ext == ".png";
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& indices, std::uint64_t seed) {
  Dataset out{ds.class_names, {}, ds.laser, ds.side, seed, {}};
  out.samples.reserve(indices.size());
  for (std::size_t i : indices) out.samples.push_back(ds.samples[i]);
  return out;
}

}  // namespace

std::map<std::string, std::string> load_remap(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open remap file " + path.string());
  std::map<std::string, std::string> remap;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) +
                         ": expected two columns variant_folder,material");
    }
    const std::string folder = trim(line.substr(0, comma));
    const std::string material = trim(line.substr(comma + 1));
    if (line_no == 1 && folder == "variant_folder" && material == "material") continue;
    if (folder.empty() || material.empty()) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": empty column");
    }
    if (!remap.emplace(folder, material).second) {
      throw DatasetError(path.string() + ":" + std::to_string(line_no) + ": folder '" + folder +
                         "' is mapped twice");
    }
  }
  return remap;
}

Dataset scan_dataset(const fs::path& root, const ScanOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw DatasetError("dataset root " + root.string() + " is not a directory");

  const std::map<std::string, std::string> remap =
      options.remap_csv ? load_remap(*options.remap_csv) : std::map<std::string, std::string>{};

  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  }
  if (class_dirs.empty()) throw DatasetError("dataset root " + root.string() + " has no class folders");
  std::sort(class_dirs.begin(), class_dirs.end());

  // folder -> class name, then sorted unique class names.
  std::vector<std::pair<fs::path, std::string>> folders;
  std::set<std::string> names;
  for (const fs::path& dir : class_dirs) {
    const std::string folder = dir.filename().string();
    const auto it = remap.find(folder);
    const std::string name = it == remap.end() ? folder : it->second;
    folders.emplace_back(dir, name);
    names.insert(name);
  }

  Dataset ds;
  ds.class_names.assign(names.begin(), names.end());
  ds.laser = options.preprocess.laser;
  ds.side = options.preprocess.side;

  std::vector<std::pair<fs::path, std::size_t>> files;
  for (const auto& [dir, name] : folders) {
    std::vector<fs::path> images;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && is_image_file(entry.path())) images.push_back(entry.path());
    }
    if (images.empty()) throw DatasetError("class folder " + dir.string() + " contains no images");
    const auto label = static_cast<std::size_t>(
        std::lower_bound(ds.class_names.begin(), ds.class_names.end(), name) - ds.class_names.begin());
    for (auto& p : images) files.emplace_back(std::move(p), label);
  }
  std::sort(files.begin(), files.end());

  for (const auto& [path, label] : files) {
    try {
      ds.samples.push_back({preprocess(load_image(path), options.preprocess), label, path});
    } catch (const DecodeError&) {
      if (!options.skip_undecodable) throw;
      ds.skipped.push_back(path);
    } catch (const ShapeError& e) {
      if (!options.skip_undecodable) throw DecodeError(path.string() + ": " + e.what());
      ds.skipped.push_back(path);
    }
  }
  if (ds.samples.empty()) throw DatasetError("no decodable images under " + root.string());
  return ds;
}

std::pair<Dataset, Dataset> split_train_val(const Dataset& dataset, double val_fraction,
                                            std::uint64_t seed) {
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw DatasetError("validation fraction must lie in (0, 1), got " + std::to_string(val_fraction));
  }
  std::vector<std::vector<std::size_t>> by_class(dataset.class_count());
  for (std::size_t i = 0; i < dataset.samples.size(); ++i)
    by_class.at(dataset.samples[i].label).push_back(i);

  rng::Engine engine(seed);
  std::vector<std::size_t> train, val;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& idx = by_class[c];
    if (idx.size() < 2) {
      throw DatasetError("class '" + dataset.class_names[c] + "' has " + std::to_string(idx.size()) +
                         " samples; a train/validation split needs at least 2");
    }
    rng::shuffle(idx.begin(), idx.end(), engine);
    const auto n = static_cast<double>(idx.size());
    std::size_t n_val = static_cast<std::size_t>(std::floor(val_fraction * n));
    n_val = std::clamp<std::size_t>(n_val, 1, idx.size() - 1);
    val.insert(val.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_val));
    train.insert(train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_val), idx.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(val.begin(), val.end());
  return {subset(dataset, train, seed), subset(dataset, val, seed)};
}

std::vector<std::vector<std::size_t>> make_batches(std::size_t sample_count, std::size_t batch_size,
                                                   std::uint64_t epoch_seed) {
  if (batch_size == 0) throw DatasetError("batch size must be at least 1");
  std::vector<std::size_t> order(sample_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng::Engine engine(epoch_seed);
  rng::shuffle(order.begin(), order.end(), engine);

  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < sample_count; start += batch_size) {
    const std::size_t end = std::min(sample_count, start + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

SpeckleParams synth_class_params(std::size_t k, std::size_t class_count, std::size_t side) {
  static constexpr double kRadii[] = {0.05, 0.1, 0.2, 0.4};
  static constexpr double kContrasts[] = {1.0, 0.6};
  SpeckleParams p;
  p.grid = side;
  p.mask_radius = kRadii[k % 4];
  p.contrast = kContrasts[(k / 4) % 2];
  p.background = class_count > 1 ? 64.0 + 96.0 * static_cast<double>(k) / static_cast<double>(class_count - 1)
                                 : 64.0;
  return p;
}

std::string synth_class_name(std::size_t k, std::size_t class_count) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(class_count - 1).size());
  std::string digits = std::to_string(k);
  return "class_" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

std::size_t synth_dataset(const SynthConfig& config) {
  if (config.class_count < 2) throw DatasetError("synthetic dataset needs at least 2 classes");
  if (config.per_class < 1) throw DatasetError("synthetic dataset needs at least 1 image per class");
  if (config.side < 1) throw DatasetError("synthetic image side must be positive");

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create " + config.out_dir.string() + ": " + ec.message());

  std::ofstream manifest(config.out_dir / "manifest.csv", std::ios::trunc);
  if (!manifest) throw IoError("cannot write " + (config.out_dir / "manifest.csv").string());
  manifest << "path,class,seed,mask_radius,contrast\n";

  const std::size_t target = channel_index(config.laser);
  std::size_t written = 0;
  for (std::size_t k = 0; k < config.class_count; ++k) {
    const std::string name = synth_class_name(k, config.class_count);
    const fs::path dir = config.out_dir / name;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    for (std::size_t i = 0; i < config.per_class; ++i) {
      SpeckleParams params = synth_class_params(k, config.class_count, config.side);
      params.seed = rng::mix_seed(config.seed, k * config.per_class + i);
      const Plane plane = synth_speckle(params);

      rng::Engine noise(rng::mix_seed(params.seed, 1));
      RawImage img{config.side, config.side, 3, std::vector<std::uint8_t>(config.side * config.side * 3)};
      for (std::size_t p = 0; p < plane.data.size(); ++p) {
        for (std::size_t ch = 0; ch < 3; ++ch) {
          img.data[3 * p + ch] = ch == target ? plane.data[p]
                                              : static_cast<std::uint8_t>(rng::uniform_index(noise, 21));
        }
      }

      char file[32];
      std::snprintf(file, sizeof file, "img_%04zu.ppm", i);
      write_ppm(dir / file, img);

      char row[160];
      std::snprintf(row, sizeof row, "%s/%s,%s,%llu,%.4f,%.4f\n", name.c_str(), file, name.c_str(),
                    static_cast<unsigned long long>(params.seed), params.mask_radius, params.contrast);
      manifest << row;
      ++written;
    }
  }
  if (!manifest.flush()) throw IoError("failed writing manifest in " + config.out_dir.string());
  return written;
}

}  // namespace specklenet
