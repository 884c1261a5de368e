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

#ifndef SPECKLENET_METRICS_HPP_
#define SPECKLENET_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specklenet/dataset.hpp"
#include "specklenet/model.hpp"
#include "specklenet/preprocess.hpp"

namespace specklenet {

/// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t class_count, std::vector<std::string> class_names = {});

  std::size_t class_count() const noexcept { return class_count_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  std::uint64_t& at(std::size_t truth, std::size_t predicted) {
    return counts_.at(truth * class_count_ + predicted);
  }
  std::uint64_t at(std::size_t truth, std::size_t predicted) const {
    return counts_.at(truth * class_count_ + predicted);
  }

  std::uint64_t row_sum(std::size_t truth) const;
  std::uint64_t column_sum(std::size_t predicted) const;
  std::uint64_t trace() const;
  std::uint64_t total() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t class_count_ = 0;
  std::vector<std::string> class_names_;
  std::vector<std::uint64_t> counts_;
};

/// Throws ShapeError for length mismatch or a label >= class_count.
ConfusionMatrix confusion(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                          std::size_t class_count, std::vector<std::string> class_names = {});

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

/// Precision TP/(TP+FP), recall TP/(TP+FN), F1 their harmonic mean; any
/// quantity with a zero denominator is 0.
ClassMetrics precision_recall_f1(const ConfusionMatrix& cm, std::size_t class_index);

struct ClassificationReport {
  std::vector<std::string> class_names;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;  // unweighted mean over classes
  std::uint64_t sample_count = 0;
};

/// Throws Error if the matrix holds no samples.
ClassificationReport report(const ConfusionMatrix& cm);

/// Rounds to 4 decimals, half away from zero.
double round4(double value);

/// Fixed-width text table of the report.
std::string format_report(const ClassificationReport& report);

/// class,precision,recall,f1 rows, then "accuracy" and "macro_avg" rows.
void write_report_csv(const std::filesystem::path& path, const ClassificationReport& report);
/// Class names across the header row and down the first column.
void write_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& cm);

struct EvaluationOptions {
  /// Laser the model was trained with; checked against the dataset's.
  std::optional<LaserColor> model_laser;
  bool force = false;
};

struct Evaluation {
  ClassificationReport report;
  ConfusionMatrix matrix;
  std::vector<std::size_t> predictions;  // in dataset order
  double mean_loss = 0.0;
};

/// Predicts every sample. Throws ShapeError on a class-count mismatch and
/// LaserMismatchError when model and dataset lasers differ without force.
Evaluation evaluate(const NetworkParams& params, const Dataset& dataset,
                    const EvaluationOptions& options = {});

}  // namespace specklenet

#endif  // SPECKLENET_METRICS_HPP_
