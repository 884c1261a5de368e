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

#include <cmath>
#include <numeric>
#include <random>

#include "specklenet/gemm.hpp"
#include "specklenet/layers.hpp"
#include "test_support.hpp"

namespace specklenet {
namespace {

using testing::central_difference;
using testing::contract;
using testing::random_tensor;
using testing::relative_error;

constexpr double kFdStep = 1e-4;

TEST(TensorTest, RejectsBadShapes) {
  EXPECT_THROW(Tensor(Shape{}), ShapeError);
  EXPECT_THROW(Tensor({1, 2, 3, 4, 5}), ShapeError);
  EXPECT_THROW(Tensor({3, 0}), ShapeError);
  EXPECT_THROW(Tensor({2, 2}, std::vector<float>{1, 2, 3}), ShapeError);
  Tensor t({2, 3, 4});
  EXPECT_EQ(t.size(), 24u);
  EXPECT_THROW(t.reshape({5, 5}), ShapeError);
}

TEST(TensorTest, RowMajorIndexing) {
  Tensor t({2, 3, 4});
  std::iota(t.data().begin(), t.data().end(), 0.0f);
  EXPECT_EQ(t(1, 2, 3), 23.0f);
  EXPECT_EQ(t(0, 1, 0), 4.0f);
  EXPECT_EQ(t(1, 0, 2), 14.0f);
}

TEST(GemmTest, AllVariantsMatchTripleLoop) {
  std::mt19937_64 gen(3);
  for (auto [m, n, k] : {std::array<std::size_t, 3>{1, 1, 1}, {5, 7, 3}, {9, 130, 300}, {17, 4, 129}}) {
    const TensorD a = random_tensor<double>({m, k}, gen);
    const TensorD b = random_tensor<double>({k, n}, gen);
    TensorD expect({m, n});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t p = 0; p < k; ++p) expect(i, j) += a(i, p) * b(p, j);

    TensorD c({m, n});
    gemm::multiply_nn(m, n, k, a.raw(), b.raw(), c.raw());
    TensorD at({k, m});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < k; ++p) at(p, i) = a(i, p);
    TensorD c_tn({m, n});
    gemm::multiply_tn(m, n, k, at.raw(), b.raw(), c_tn.raw());
    TensorD bt({n, k});
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t j = 0; j < n; ++j) bt(j, p) = b(p, j);
    TensorD c_nt({m, n});
    gemm::multiply_nt(m, n, k, a.raw(), bt.raw(), c_nt.raw());

    for (std::size_t i = 0; i < expect.size(); ++i) {
      EXPECT_NEAR(c[i], expect[i], 1e-12);
      EXPECT_NEAR(c_tn[i], expect[i], 1e-12);
      EXPECT_NEAR(c_nt[i], expect[i], 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------
// conv2d_valid

TEST(Conv2dTest, OnesGiveNine) {
  const Tensor out = conv2d_valid(Tensor({3, 3, 1}, 1.0f), Tensor({3, 3, 1, 1}, 1.0f), Tensor({1}, 0.0f));
  ASSERT_EQ(out.shape(), (Shape{1, 1, 1}));
  EXPECT_EQ(out[0], 9.0f);
}

TEST(Conv2dTest, ZeroKernelsGiveBias) {
  std::mt19937_64 gen(1);
  const Tensor in = random_tensor<float>({7, 5, 3}, gen);
  const Tensor bias({4}, {0.5f, -1.0f, 2.0f, 0.0f});
  const Tensor out = conv2d_valid(in, Tensor({3, 3, 3, 4}), bias);
  ASSERT_EQ(out.shape(), (Shape{5, 3, 4}));
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], bias[i % 4]);
}

TEST(Conv2dTest, MatchesNaiveOracle) {
  std::mt19937_64 gen(20240601);
  const TensorD in = random_tensor<double>({6, 6, 2}, gen);
  const TensorD k = random_tensor<double>({3, 3, 2, 3}, gen);
  const TensorD b = random_tensor<double>({3}, gen);
  const TensorD fast = conv2d_valid(in, k, b);
  const TensorD slow = testing::naive_conv2d(in, k, b);
  ASSERT_EQ(fast.shape(), slow.shape());
  for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_LT(relative_error(fast[i], slow[i]), 1e-6);
}

// Single precision: a sum of 18 products can cancel, so the error is
// measured against the sum of absolute terms rather than the result.
TEST(Conv2dTest, SinglePrecisionMatchesOracleToRoundoff) {
  std::mt19937_64 gen(20240602);
  const Tensor in = random_tensor<float>({9, 7, 4}, gen);
  const Tensor k = random_tensor<float>({3, 3, 4, 5}, gen);
  const Tensor b = random_tensor<float>({5}, gen);
  const Tensor fast = conv2d_valid(in, k, b);
  const Tensor slow = testing::naive_conv2d(in, k, b);
  Tensor abs_in(in), abs_k(k), abs_b(b);
  for (float& v : abs_in.data()) v = std::abs(v);
  for (float& v : abs_k.data()) v = std::abs(v);
  for (float& v : abs_b.data()) v = std::abs(v);
  const Tensor scale = testing::naive_conv2d(abs_in, abs_k, abs_b);
  for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_LE(std::abs(fast[i] - slow[i]), 1e-6 * scale[i]);
}

TEST(Conv2dTest, ShapeErrorsNameDimensions) {
  try {
    conv2d_valid(Tensor({5, 5, 2}), Tensor({3, 3, 3, 4}), Tensor({4}));
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("channels"), std::string::npos);
  }
  EXPECT_THROW(conv2d_valid(Tensor({2, 5, 1}), Tensor({3, 3, 1, 1}), Tensor({1})), ShapeError);
  EXPECT_THROW(conv2d_valid(Tensor({5, 5, 1}), Tensor({3, 3, 1, 2}), Tensor({3})), ShapeError);
  EXPECT_THROW(conv2d_valid(Tensor({25}), Tensor({3, 3, 1, 1}), Tensor({1})), ShapeError);
}

TEST(Conv2dBackwardTest, ZeroUpstreamGivesZeroGradients) {
  std::mt19937_64 gen(2);
  const Tensor in = random_tensor<float>({5, 6, 2}, gen);
  const Tensor k = random_tensor<float>({3, 3, 2, 3}, gen);
  const ConvGrads<float> g = conv2d_valid_backward(in, k, Tensor({3, 4, 3}));
  for (float v : g.input.data()) EXPECT_EQ(v, 0.0f);
  for (float v : g.kernels.data()) EXPECT_EQ(v, 0.0f);
  for (float v : g.bias.data()) EXPECT_EQ(v, 0.0f);
}

TEST(Conv2dBackwardTest, UnitUpstreamAtOriginGivesInputPatch) {
  std::mt19937_64 gen(3);
  const Tensor in = random_tensor<float>({5, 5, 2}, gen);
  const Tensor k = random_tensor<float>({3, 3, 2, 2}, gen);
  Tensor up({3, 3, 2});
  up(0, 0, 0) = 1.0f;
  const ConvGrads<float> g = conv2d_valid_backward(in, k, up);
  for (std::size_t dy = 0; dy < 3; ++dy)
    for (std::size_t dx = 0; dx < 3; ++dx)
      for (std::size_t ci = 0; ci < 2; ++ci) {
        EXPECT_EQ(g.kernels(dy, dx, ci, 0), in(dy, dx, ci));
        EXPECT_EQ(g.kernels(dy, dx, ci, 1), 0.0f);
      }
  EXPECT_EQ(g.bias[0], 1.0f);
  EXPECT_EQ(g.bias[1], 0.0f);
}

TEST(Conv2dBackwardTest, BiasGradientSumsUpstream) {
  std::mt19937_64 gen(4);
  const Tensor in = random_tensor<float>({6, 6, 1}, gen);
  const Tensor k = random_tensor<float>({3, 3, 1, 2}, gen);
  const Tensor up = random_tensor<float>({4, 4, 2}, gen);
  const ConvGrads<float> g = conv2d_valid_backward(in, k, up);
  for (std::size_t co = 0; co < 2; ++co) {
    double s = 0.0;
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t x = 0; x < 4; ++x) s += up(y, x, co);
    EXPECT_NEAR(g.bias[co], s, 1e-5);
  }
}

TEST(Conv2dBackwardTest, MatchesFiniteDifferences) {
  std::mt19937_64 gen(5);
  TensorD in = random_tensor<double>({6, 5, 2}, gen);
  TensorD k = random_tensor<double>({3, 3, 2, 3}, gen);
  TensorD b = random_tensor<double>({3}, gen);
  const TensorD weights = random_tensor<double>({4, 3, 3}, gen);
  const auto loss = [&] { return contract(conv2d_valid(in, k, b), weights); };
  const ConvGrads<double> g = conv2d_valid_backward(in, k, weights);
  for (std::size_t i = 0; i < in.size(); ++i)
    EXPECT_LT(relative_error(g.input[i], central_difference(in, i, loss, kFdStep)), 1e-5) << "input " << i;
  for (std::size_t i = 0; i < k.size(); ++i)
    EXPECT_LT(relative_error(g.kernels[i], central_difference(k, i, loss, kFdStep)), 1e-5) << "kernel " << i;
  for (std::size_t i = 0; i < b.size(); ++i)
    EXPECT_LT(relative_error(g.bias[i], central_difference(b, i, loss, kFdStep)), 1e-5) << "bias " << i;
}

TEST(Conv2dBackwardTest, SinglePrecisionWithinLooseTolerance) {
  std::mt19937_64 gen(6);
  Tensor in = random_tensor<float>({5, 5, 2}, gen);
  Tensor k = random_tensor<float>({3, 3, 2, 2}, gen);
  const Tensor b = random_tensor<float>({2}, gen);
  const Tensor weights = random_tensor<float>({3, 3, 2}, gen);
  const auto loss = [&] { return contract(conv2d_valid(in, k, b), weights); };
  const ConvGrads<float> g = conv2d_valid_backward(in, k, weights);
  for (std::size_t i = 0; i < k.size(); ++i)
    EXPECT_LT(relative_error(g.kernels[i], central_difference(k, i, loss, 1e-2), 1e-3), 1e-2);
}

TEST(Conv2dBackwardTest, UpstreamShapeChecked) {
  EXPECT_THROW(conv2d_valid_backward(Tensor({5, 5, 1}), Tensor({3, 3, 1, 2}), Tensor({3, 3, 1})), ShapeError);
}

// ---------------------------------------------------------------------------
// maxpool2

TEST(MaxPoolTest, PicksWindowMaximum) {
  const PoolTrace<float> t = maxpool2(Tensor({2, 2, 1}, {1, 2, 3, 4}));
  ASSERT_EQ(t.output.shape(), (Shape{1, 1, 1}));
  EXPECT_EQ(t.output[0], 4.0f);
  EXPECT_EQ(t.argmax[0], 3u);
}

TEST(MaxPoolTest, OddSideDropsTrailingRowAndColumn) {
  const Tensor in({3, 3, 1}, {1, 5, 9, 2, 3, 9, 9, 9, 9});
  const PoolTrace<float> t = maxpool2(in);
  ASSERT_EQ(t.output.shape(), (Shape{1, 1, 1}));
  EXPECT_EQ(t.output[0], 5.0f);
  EXPECT_EQ(maxpool2(Tensor({127, 127, 32})).output.shape(), (Shape{63, 63, 32}));
}

TEST(MaxPoolTest, TiesGoToFirstInRowMajorOrder) {
  const PoolTrace<float> t = maxpool2(Tensor({2, 2, 1}, {7, 7, 7, 7}));
  EXPECT_EQ(t.argmax[0], 0u);
  const PoolTrace<float> t2 = maxpool2(Tensor({2, 2, 1}, {1, 3, 3, 2}));
  EXPECT_EQ(t2.argmax[0], 1u);
}

TEST(MaxPoolTest, ArgmaxStaysInsideWindow) {
  std::mt19937_64 gen(7);
  const Tensor in = random_tensor<float>({9, 8, 3}, gen);
  const PoolTrace<float> t = maxpool2(in);
  std::size_t cell = 0;
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t c = 0; c < 3; ++c, ++cell) {
        const std::size_t idx = t.argmax[cell];
        const std::size_t iy = idx / (8 * 3), ix = (idx / 3) % 8, ic = idx % 3;
        EXPECT_EQ(ic, c);
        EXPECT_TRUE(iy / 2 == y && ix / 2 == x);
      }
}

TEST(MaxPoolTest, RejectsTinyInput) {
  EXPECT_THROW(maxpool2(Tensor({1, 4, 1})), ShapeError);
  EXPECT_THROW(maxpool2(Tensor({4, 4})), ShapeError);
}

TEST(MaxPoolBackwardTest, RoutesToArgmax) {
  const PoolTrace<float> t = maxpool2(Tensor({2, 2, 1}, {1, 2, 3, 4}));
  const Tensor g = maxpool2_backward(t, Tensor({1, 1, 1}, 1.0f));
  EXPECT_EQ(g, Tensor({2, 2, 1}, {0, 0, 0, 1}));
}

TEST(MaxPoolBackwardTest, ConservesMass) {
  std::mt19937_64 gen(8);
  const Tensor in = random_tensor<float>({10, 11, 4}, gen);  // continuous values: no ties
  const PoolTrace<float> t = maxpool2(in);
  const Tensor up = random_tensor<float>(t.output.shape(), gen);
  const Tensor g = maxpool2_backward(t, up);
  double sg = 0.0, su = 0.0;
  for (float v : g.data()) sg += v;
  for (float v : up.data()) su += v;
  EXPECT_NEAR(sg, su, 1e-9);
}

TEST(MaxPoolBackwardTest, MatchesFiniteDifferences) {
  std::mt19937_64 gen(9);
  TensorD in = random_tensor<double>({6, 7, 2}, gen);
  const PoolTrace<double> t = maxpool2(in);
  const TensorD weights = random_tensor<double>(t.output.shape(), gen);
  const TensorD g = maxpool2_backward(t, weights);
  const auto loss = [&] { return contract(maxpool2(in).output, weights); };
  for (std::size_t i = 0; i < in.size(); ++i)
    EXPECT_LT(relative_error(g[i], central_difference(in, i, loss, kFdStep)), 1e-5) << i;
}

TEST(MaxPoolBackwardTest, ShapeChecked) {
  const PoolTrace<float> t = maxpool2(Tensor({4, 4, 1}));
  EXPECT_THROW(maxpool2_backward(t, Tensor({2, 2, 2})), ShapeError);
}

// ---------------------------------------------------------------------------
// relu

TEST(ReluTest, ForwardAndBackward) {
  const Tensor x({3}, {-1, 0, 2});
  EXPECT_EQ(relu(x), Tensor({3}, {0, 0, 2}));
  EXPECT_EQ(relu_backward(x, Tensor({3}, 5.0f)), Tensor({3}, {0, 0, 5}));
}

TEST(ReluTest, PositiveAndNegativePartsSumToAbs) {
  std::mt19937_64 gen(10);
  const Tensor x = random_tensor<float>({4, 5, 6}, gen);
  Tensor neg(x);
  for (float& v : neg.data()) v = -v;
  const Tensor a = relu(x), b = relu(neg);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(a[i] + b[i], std::abs(x[i]));
}

TEST(ReluTest, BackwardShapeChecked) {
  EXPECT_THROW(relu_backward(Tensor({3}), Tensor({4})), ShapeError);
}

// ---------------------------------------------------------------------------
// dense

TEST(DenseTest, IdentityWeights) {
  std::mt19937_64 gen(11);
  const Tensor x = random_tensor<float>({6}, gen);
  Tensor w({6, 6});
  for (std::size_t i = 0; i < 6; ++i) w(i, i) = 1.0f;
  EXPECT_EQ(dense(x, w, Tensor({6})), x);
}

TEST(DenseTest, SmallExample) {
  const Tensor out = dense(Tensor({2}, {1, 2}), Tensor({2, 2}, {1, 0, 0, 1}), Tensor({2}, {10, 20}));
  EXPECT_EQ(out, Tensor({2}, {11, 22}));
}

TEST(DenseTest, ShapeChecked) {
  EXPECT_THROW(dense(Tensor({3}), Tensor({2, 2}), Tensor({2})), ShapeError);
  EXPECT_THROW(dense(Tensor({2}), Tensor({2, 2}), Tensor({3})), ShapeError);
  EXPECT_THROW(dense_backward(Tensor({2}), Tensor({2, 3}), Tensor({2})), ShapeError);
}

TEST(DenseBackwardTest, MatchesFiniteDifferences) {
  std::mt19937_64 gen(12);
  TensorD x = random_tensor<double>({8}, gen);
  TensorD w = random_tensor<double>({8, 5}, gen);
  TensorD b = random_tensor<double>({5}, gen);
  const TensorD weights = random_tensor<double>({5}, gen);
  const auto loss = [&] { return contract(dense(x, w, b), weights); };
  const DenseGrads<double> g = dense_backward(x, w, weights);
  for (std::size_t i = 0; i < x.size(); ++i)
    EXPECT_LT(relative_error(g.input[i], central_difference(x, i, loss, kFdStep)), 1e-5);
  for (std::size_t i = 0; i < w.size(); ++i)
    EXPECT_LT(relative_error(g.weights[i], central_difference(w, i, loss, kFdStep)), 1e-5);
  for (std::size_t i = 0; i < b.size(); ++i)
    EXPECT_LT(relative_error(g.bias[i], central_difference(b, i, loss, kFdStep)), 1e-5);
}

// ---------------------------------------------------------------------------
// softmax / cross-entropy

TEST(SoftmaxTest, EqualLogitsAreUniform) {
  const Tensor p = softmax(Tensor({30}, 0.7f));
  for (float v : p.data()) EXPECT_NEAR(v, 1.0 / 30.0, 1e-7);
}

TEST(SoftmaxTest, AnalyticTwoClass) {
  const TensorD p = softmax(TensorD({2}, {0.0, std::log(3.0)}));
  EXPECT_NEAR(p[0], 0.25, 1e-12);
  EXPECT_NEAR(p[1], 0.75, 1e-12);
}

TEST(SoftmaxTest, ShiftInvariantAndNormalized) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const TensorD x = random_tensor<double>({30}, gen, -10.0, 10.0);
    for (double c : {-50.0, 3.5, 1000.0}) {
      TensorD shifted(x);
      for (double& v : shifted.data()) v += c;
      const TensorD a = softmax(x), b = softmax(shifted);
      double sum = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-7);
        EXPECT_GT(b[i], 0.0);
        EXPECT_LE(b[i], 1.0);
        sum += b[i];
      }
      EXPECT_NEAR(sum, 1.0, 1e-6);
    }
  }
}

// In single precision x + 1000 is itself rounded unless x sits on a coarse
// grid; on such a grid the max-subtracted logits are identical, so the
// outputs must be too.
TEST(SoftmaxTest, SinglePrecisionShiftOnExactGrid) {
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> ticks(-640, 640);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor x({30});
    for (float& v : x.data()) v = static_cast<float>(ticks(gen)) / 64.0f;
    Tensor shifted(x);
    for (float& v : shifted.data()) v += 1000.0f;
    const Tensor a = softmax(x), b = softmax(shifted);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-7);
      sum += a[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(CrossEntropyTest, KnownValues) {
  EXPECT_EQ(cross_entropy(TensorD({3}, {0, 1, 0}), one_hot<double>(1, 3)), 0.0);
  EXPECT_NEAR(cross_entropy(TensorD({30}, 1.0 / 30.0), one_hot<double>(4, 30)), 3.4012, 5e-5);
  EXPECT_NEAR(cross_entropy(TensorD({2}, {0.9, 0.1}), one_hot<double>(0, 2)), 0.10536, 5e-6);
}

TEST(CrossEntropyTest, ClampKeepsLossFinite) {
  const double loss = cross_entropy(TensorD({2}, {1.0, 0.0}), one_hot<double>(1, 2));
  EXPECT_NEAR(loss, -std::log(1e-12), 1e-9);
  EXPECT_NEAR(loss, 27.631, 1e-3);
}

TEST(CrossEntropyTest, RejectsMalformedOneHot) {
  const Tensor p({3}, 1.0f / 3.0f);
  EXPECT_THROW(cross_entropy(p, Tensor({3}, {1, 1, 0})), NumericError);
  EXPECT_THROW(cross_entropy(p, Tensor({3}, {0, 0, 0})), NumericError);
  EXPECT_THROW(cross_entropy(p, Tensor({3}, {0.5f, 0.5f, 0})), NumericError);
  EXPECT_THROW(softmax_xent_grad(p, Tensor({3}, {0, 2, 0})), NumericError);
  EXPECT_THROW(cross_entropy(p, Tensor({4}, {0, 1, 0, 0})), ShapeError);
}

TEST(SoftmaxXentGradTest, KnownValues) {
  const Tensor onehot = one_hot<float>(2, 4);
  const Tensor g = softmax_xent_grad(onehot, onehot);
  for (float v : g.data()) EXPECT_EQ(v, 0.0f);
  EXPECT_EQ(softmax_xent_grad(Tensor({2}, 0.5f), one_hot<float>(0, 2)), Tensor({2}, {-0.5f, 0.5f}));
}

TEST(SoftmaxXentGradTest, MatchesFiniteDifferencesAndSumsToZero) {
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 5; ++trial) {
    TensorD logits = random_tensor<double>({7}, gen, -3.0, 3.0);
    const TensorD target = one_hot<double>(static_cast<std::size_t>(trial), 7);
    const TensorD g = softmax_xent_grad(softmax(logits), target);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto loss = [&] { return cross_entropy(softmax(logits), target); };
      EXPECT_LT(relative_error(g[i], central_difference(logits, i, loss, kFdStep)), 1e-5);
      sum += g[i];
    }
    EXPECT_NEAR(sum, 0.0, 1e-6);
  }
}

// ---------------------------------------------------------------------------
// flatten

TEST(FlattenTest, ShapesAndRoundTrip) {
  EXPECT_EQ(flatten(Tensor({14, 14, 128})).shape(), (Shape{25088}));
  EXPECT_EQ(flatten(Tensor({1, 1, 1}, {2.5f})), Tensor({1}, {2.5f}));
  std::mt19937_64 gen(15);
  const Tensor x = random_tensor<float>({3, 4, 5}, gen);
  EXPECT_EQ(flatten(x).reshaped(x.shape()), x);
  EXPECT_THROW(flatten(Tensor({4, 4})), ShapeError);
}

TEST(DeterminismTest, RepeatedCallsAreBitIdentical) {
  std::mt19937_64 gen(16);
  const Tensor in = random_tensor<float>({20, 20, 8}, gen);
  const Tensor k = random_tensor<float>({3, 3, 8, 16}, gen);
  const Tensor b = random_tensor<float>({16}, gen);
  EXPECT_EQ(conv2d_valid(in, k, b), conv2d_valid(in, k, b));
  const Tensor up = random_tensor<float>({18, 18, 16}, gen);
  const ConvGrads<float> g1 = conv2d_valid_backward(in, k, up), g2 = conv2d_valid_backward(in, k, up);
  EXPECT_EQ(g1.input, g2.input);
  EXPECT_EQ(g1.kernels, g2.kernels);
}

}  // namespace
}  // namespace specklenet
