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

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "specklenet/metrics.hpp"
#include "test_support.hpp"

namespace specklenet {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ConfusionTest, CountsAndSums) {
  const std::vector<std::size_t> truth = {0, 0, 1, 2, 2, 2};
  const std::vector<std::size_t> pred = {0, 1, 1, 2, 0, 2};
  const ConfusionMatrix cm = confusion(truth, pred, 3);
  EXPECT_EQ(cm.at(0, 0), 1u);
  EXPECT_EQ(cm.at(0, 1), 1u);
  EXPECT_EQ(cm.at(2, 0), 1u);
  EXPECT_EQ(cm.row_sum(2), 3u);
  EXPECT_EQ(cm.column_sum(0), 2u);
  EXPECT_EQ(cm.trace(), 4u);
  EXPECT_EQ(cm.total(), 6u);
}

TEST(ConfusionTest, Errors) {
  const std::vector<std::size_t> a = {0, 1}, b = {0}, c = {0, 3};
  EXPECT_THROW(confusion(a, b, 2), ShapeError);
  EXPECT_THROW(confusion(a, c, 3), ShapeError);
  EXPECT_THROW(confusion(c, a, 3), ShapeError);
}

TEST(MetricsTest, PublishedRowsToFourDecimals) {
  for (const auto& group : testing::material_groups()) {
    const ConfusionMatrix cm = testing::material_group_matrix(group);
    for (std::size_t i = 0; i < 3; ++i) {
      const ClassMetrics m = precision_recall_f1(cm, i);
      EXPECT_EQ(round4(m.precision), group[i].precision) << group[i].name;
      EXPECT_EQ(round4(m.recall), group[i].recall) << group[i].name;
      EXPECT_EQ(round4(m.f1), group[i].f1) << group[i].name;
      EXPECT_EQ(m.support, 100u);
    }
  }
}

TEST(MetricsTest, LeatherByHand) {
  const ConfusionMatrix cm = testing::material_group_matrix(testing::material_groups()[0]);
  const ClassMetrics m = precision_recall_f1(cm, 1);
  EXPECT_DOUBLE_EQ(m.precision, 90.0 / 98.0);
  EXPECT_DOUBLE_EQ(m.recall, 0.9);
  EXPECT_NEAR(m.f1, 2.0 * 90.0 / (2.0 * 90.0 + 8.0 + 10.0), 1e-15);
}

TEST(MetricsTest, ZeroDenominatorsGiveZero) {
  ConfusionMatrix cm(3);
  cm.at(0, 0) = 5;
  cm.at(1, 0) = 2;  // class 1 never predicted, class 2 absent
  const ClassMetrics never = precision_recall_f1(cm, 1);
  EXPECT_EQ(never.precision, 0.0);
  EXPECT_EQ(never.recall, 0.0);
  EXPECT_EQ(never.f1, 0.0);
  const ClassMetrics absent = precision_recall_f1(cm, 2);
  EXPECT_EQ(absent.precision, 0.0);
  EXPECT_EQ(absent.recall, 0.0);
  EXPECT_EQ(absent.support, 0u);
}

TEST(MetricsTest, PerfectAndMacroAverages) {
  ConfusionMatrix perfect(2);
  perfect.at(0, 0) = 3;
  perfect.at(1, 1) = 4;
  const ClassificationReport p = report(perfect);
  EXPECT_EQ(p.accuracy, 1.0);
  EXPECT_EQ(p.macro_f1, 1.0);

  const ConfusionMatrix cm = testing::material_group_matrix(testing::material_groups()[2]);
  const ClassificationReport r = report(cm);
  double f1 = 0.0, prec = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    f1 += precision_recall_f1(cm, c).f1 / 4.0;
    prec += precision_recall_f1(cm, c).precision / 4.0;
  }
  EXPECT_NEAR(r.macro_f1, f1, 1e-15);
  EXPECT_NEAR(r.macro_precision, prec, 1e-15);
  EXPECT_DOUBLE_EQ(r.accuracy, double(85 + 100 + 92 + 100) / double(cm.total()));
  EXPECT_EQ(r.sample_count, cm.total());
  EXPECT_THROW(report(ConfusionMatrix(3)), Error);
}

TEST(MetricsTest, Round4) {
  EXPECT_EQ(round4(0.91836734), 0.9184);
  EXPECT_EQ(round4(0.88083), 0.8808);
  EXPECT_EQ(round4(1.0), 1.0);
  EXPECT_EQ(round4(0.0), 0.0);
}

TEST(ReportOutputTest, CsvFiles) {
  testing::TempDir dir;
  const ConfusionMatrix cm = testing::material_group_matrix(testing::material_groups()[0]);
  const ClassificationReport r = report(cm);
  write_report_csv(dir / "r.csv", r);
  const std::string csv = slurp(dir / "r.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "class,precision,recall,f1");
  EXPECT_NE(csv.find("\nLeather,0.9184,0.9000,0.9091\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\nSuede,1.0000,0.9600,0.9796\n"), std::string::npos);
  EXPECT_NE(csv.find("\naccuracy,,,"), std::string::npos);
  EXPECT_NE(csv.find("\nmacro_avg,"), std::string::npos);

  write_confusion_csv(dir / "c.csv", cm);
  const std::string c = slurp(dir / "c.csv");
  EXPECT_EQ(c.substr(0, c.find('\n')), "true\\predicted,Felt,Leather,Suede,Other");
  EXPECT_NE(c.find("\nLeather,0,90,0,10\n"), std::string::npos) << c;
  EXPECT_NE(c.find("\nOther,0,8,0,100\n"), std::string::npos) << c;

  const std::string text = format_report(r);
  EXPECT_NE(text.find("Leather"), std::string::npos);
  EXPECT_NE(text.find("0.9184"), std::string::npos);
  EXPECT_NE(text.find("macro avg"), std::string::npos);
}

TEST(EvaluateTest, ChecksClassCountAndLaser) {
  Dataset ds;
  ds.class_names = {"a", "b"};
  ds.laser = LaserColor::Red;
  ds.side = 46;
  ds.samples.push_back({Tensor({46, 46, 1}, 0.2f), 0, {}});
  ds.samples.push_back({Tensor({46, 46, 1}, 0.8f), 1, {}});
  const NetworkParams p = build_network<float>(46, 2, 3);
  const Evaluation ev = evaluate(p, ds);
  EXPECT_EQ(ev.matrix.total(), 2u);
  EXPECT_EQ(ev.predictions.size(), 2u);
  EXPECT_EQ(ev.predictions[1], predict(p, ds.samples[1].image).class_index);
  EXPECT_GT(ev.mean_loss, 0.0);

  EvaluationOptions mismatch;
  mismatch.model_laser = LaserColor::Green;
  EXPECT_THROW(evaluate(p, ds, mismatch), LaserMismatchError);
  mismatch.force = true;
  EXPECT_NO_THROW(evaluate(p, ds, mismatch));
  EXPECT_THROW(evaluate(build_network<float>(46, 3, 3), ds), ShapeError);
}

TEST(EvaluateTest, OrderIndependentAndSingleSample) {
  std::mt19937_64 gen(4);
  Dataset ds;
  ds.class_names = {"a", "b", "c"};
  ds.side = 46;
  for (std::size_t i = 0; i < 9; ++i)
    ds.samples.push_back({testing::random_tensor<float>({46, 46, 1}, gen, 0.0, 1.0), i % 3, {}});
  const NetworkParams p = build_network<float>(46, 3, 4);
  Dataset reversed = ds;
  std::reverse(reversed.samples.begin(), reversed.samples.end());
  const Evaluation a = evaluate(p, ds), b = evaluate(p, reversed);
  EXPECT_EQ(a.matrix, b.matrix);
  EXPECT_EQ(a.report.macro_f1, b.report.macro_f1);
  Dataset one = ds;
  one.samples.resize(1);
  const double acc = evaluate(p, one).report.accuracy;
  EXPECT_TRUE(acc == 0.0 || acc == 1.0);
}

}  // namespace
}  // namespace specklenet
