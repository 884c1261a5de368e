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

#include "specklenet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "specklenet/error.hpp"

namespace specklenet {
namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", round4(v));
  return buf;
}

std::string class_label(const ConfusionMatrix& cm, std::size_t c) {
  return c < cm.class_names().size() ? cm.class_names()[c] : std::to_string(c);
}

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::size_t class_count, std::vector<std::string> class_names)
    : class_count_(class_count), class_names_(std::move(class_names)), counts_(class_count * class_count, 0) {
  if (!class_names_.empty() && class_names_.size() != class_count_) {
    throw ShapeError("confusion matrix: " + std::to_string(class_names_.size()) + " names for " +
                     std::to_string(class_count_) + " classes");
  }
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < class_count_; ++p) s += at(truth, p);
  return s;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t predicted) const {
  std::uint64_t s = 0;
  for (std::size_t t = 0; t < class_count_; ++t) s += at(t, predicted);
  return s;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t s = 0;
  for (std::size_t c = 0; c < class_count_; ++c) s += at(c, c);
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (std::uint64_t v : counts_) s += v;
  return s;
}

ConfusionMatrix confusion(std::span<const std::size_t> truth, std::span<const std::size_t> predicted,
                          std::size_t class_count, std::vector<std::string> class_names) {
  if (truth.size() != predicted.size()) {
    throw ShapeError("confusion: " + std::to_string(truth.size()) + " true labels but " +
                     std::to_string(predicted.size()) + " predictions");
  }
  ConfusionMatrix cm(class_count, std::move(class_names));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= class_count || predicted[i] >= class_count) {
      throw ShapeError("confusion: label pair (" + std::to_string(truth[i]) + ", " +
                       std::to_string(predicted[i]) + ") out of range for " +
                       std::to_string(class_count) + " classes");
    }
    ++cm.at(truth[i], predicted[i]);
  }
  return cm;
}

ClassMetrics precision_recall_f1(const ConfusionMatrix& cm, std::size_t class_index) {
  const std::uint64_t tp = cm.at(class_index, class_index);
  const std::uint64_t predicted = cm.column_sum(class_index);
  const std::uint64_t actual = cm.row_sum(class_index);
  ClassMetrics m;
  m.precision = ratio(tp, predicted);
  m.recall = ratio(tp, actual);
  m.f1 = (m.precision + m.recall) > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.support = actual;
  return m;
}

ClassificationReport report(const ConfusionMatrix& cm) {
  if (cm.class_count() == 0 || cm.total() == 0) throw Error("classification report of an empty confusion matrix");
  ClassificationReport r;
  r.sample_count = cm.total();
  r.accuracy = ratio(cm.trace(), cm.total());
  for (std::size_t c = 0; c < cm.class_count(); ++c) {
    r.class_names.push_back(class_label(cm, c));
    r.per_class.push_back(precision_recall_f1(cm, c));
    r.macro_precision += r.per_class.back().precision;
    r.macro_recall += r.per_class.back().recall;
    r.macro_f1 += r.per_class.back().f1;
  }
  const auto k = static_cast<double>(cm.class_count());
  r.macro_precision /= k;
  r.macro_recall /= k;
  r.macro_f1 /= k;
  return r;
}

double round4(double value) {
  const double scaled = std::round(value * 10000.0);
  return scaled / 10000.0;
}

std::string format_report(const ClassificationReport& r) {
  std::size_t width = 12;
  for (const auto& n : r.class_names) width = std::max(width, n.size() + 2);
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-*s %9s %9s %9s %9s\n", static_cast<int>(width), "class", "precision",
                "recall", "f1-score", "support");
  out += buf;
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    const ClassMetrics& m = r.per_class[c];
    std::snprintf(buf, sizeof buf, "%-*s %9s %9s %9s %9llu\n", static_cast<int>(width), r.class_names[c].c_str(),
                  fixed4(m.precision).c_str(), fixed4(m.recall).c_str(), fixed4(m.f1).c_str(),
                  static_cast<unsigned long long>(m.support));
    out += buf;
  }
  out += '\n';
  std::snprintf(buf, sizeof buf, "%-*s %9s %9s %9s %9llu\n", static_cast<int>(width), "accuracy", "", "",
                fixed4(r.accuracy).c_str(), static_cast<unsigned long long>(r.sample_count));
  out += buf;
  std::snprintf(buf, sizeof buf, "%-*s %9s %9s %9s %9llu\n", static_cast<int>(width), "macro avg",
                fixed4(r.macro_precision).c_str(), fixed4(r.macro_recall).c_str(), fixed4(r.macro_f1).c_str(),
                static_cast<unsigned long long>(r.sample_count));
  out += buf;
  return out;
}

void write_report_csv(const std::filesystem::path& path, const ClassificationReport& r) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "class,precision,recall,f1\n";
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    const ClassMetrics& m = r.per_class[c];
    out << r.class_names[c] << ',' << fixed4(m.precision) << ',' << fixed4(m.recall) << ',' << fixed4(m.f1) << '\n';
  }
  out << "accuracy,,," << fixed4(r.accuracy) << '\n';
  out << "macro_avg," << fixed4(r.macro_precision) << ',' << fixed4(r.macro_recall) << ','
      << fixed4(r.macro_f1) << '\n';
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

void write_confusion_csv(const std::filesystem::path& path, const ConfusionMatrix& cm) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "true\\predicted";
  for (std::size_t c = 0; c < cm.class_count(); ++c) out << ',' << class_label(cm, c);
  out << '\n';
  for (std::size_t t = 0; t < cm.class_count(); ++t) {
    out << class_label(cm, t);
    for (std::size_t p = 0; p < cm.class_count(); ++p) out << ',' << cm.at(t, p);
    out << '\n';
  }
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

Evaluation evaluate(const NetworkParams& params, const Dataset& dataset, const EvaluationOptions& options) {
  if (dataset.class_count() != params.class_count()) {
    throw ShapeError("model has " + std::to_string(params.class_count()) + " classes but the dataset has " +
                     std::to_string(dataset.class_count()));
  }
  if (options.model_laser && *options.model_laser != dataset.laser && !options.force) {
    throw LaserMismatchError("model was trained with the " + std::string(to_string(*options.model_laser)) +
                             " laser channel but the data was preprocessed for " +
                             std::string(to_string(dataset.laser)));
  }
  Evaluation ev;
  std::vector<std::size_t> truth;
  truth.reserve(dataset.size());
  ev.predictions.reserve(dataset.size());
  double loss = 0.0;
  for (const Sample& s : dataset.samples) {
    const ForwardTrace<float> trace = forward(params, s.image);
    loss += cross_entropy(trace.probs, one_hot<float>(s.label, params.class_count()));
    truth.push_back(s.label);
    ev.predictions.push_back(argmax(trace.probs));
  }
  ev.mean_loss = dataset.size() ? loss / static_cast<double>(dataset.size()) : 0.0;
  ev.matrix = confusion(truth, ev.predictions, dataset.class_count(), dataset.class_names);
  ev.report = report(ev.matrix);
  return ev;
}

}  // namespace specklenet
