// Copyright 2026 The mvg Authors.
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

#include "mvg/geometry.hpp"

#include <gtest/gtest.h>

#include "mvg/rng.hpp"
#include "oracles.hpp"

namespace mvg {
namespace {

TEST(Area, HalfOpenExtents) {
  EXPECT_EQ(area(PixelBox{0, 0, 10, 10}), 100.0);
  EXPECT_EQ(area(PixelBox{5, 5, 5, 9}), 0.0);
  EXPECT_EQ(area(PixelBox{2.5, 0, 7.5, 4}), 20.0);
}

TEST(Iou, KnownCases) {
  const PixelBox a{0, 0, 10, 10};
  EXPECT_EQ(iou(a, a), 1.0);
  EXPECT_EQ(iou(a, PixelBox{20, 20, 30, 30}), 0.0);
  EXPECT_NEAR(iou(a, PixelBox{5, 5, 15, 15}), 25.0 / 175.0, 1e-15);
}

TEST(Dice, KnownCases) {
  const PixelBox a{0, 0, 10, 10};
  EXPECT_EQ(dice(a, a), 1.0);
  EXPECT_DOUBLE_EQ(dice(a, PixelBox{5, 5, 15, 15}), 0.25);
  EXPECT_EQ(dice(a, PixelBox{20, 20, 30, 30}), 0.0);
}

TEST(Metrics, TouchingEdgesDoNotOverlap) {
  EXPECT_EQ(iou(PixelBox{0, 0, 10, 10}, PixelBox{10, 0, 20, 10}), 0.0);
}

TEST(Metrics, BothDegenerateIsZeroNotNan) {
  const PixelBox p{3, 3, 3, 3};
  EXPECT_EQ(iou(p, p), 0.0);
  EXPECT_EQ(dice(p, p), 0.0);
  EXPECT_EQ(iou(p, PixelBox{1, 1, 4, 4}), 0.0);
}

TEST(Validity, RejectsInvertedNegativeAndNonFinite) {
  EXPECT_TRUE(is_valid(PixelBox{0, 0, 0, 0}));
  EXPECT_FALSE(is_valid(PixelBox{5, 0, 4, 1}));
  EXPECT_FALSE(is_valid(PixelBox{-1, 0, 4, 1}));
  EXPECT_FALSE(is_valid(PixelBox{0, 0, std::nan(""), 1}));
}

TEST(Metrics, FloatScalarInstantiates) {
  const Box<float> a{0, 0, 10, 10};
  EXPECT_FLOAT_EQ(iou(a, Box<float>{5, 5, 15, 15}), 25.0f / 175.0f);
}

PixelBox random_box(Rng& rng, double extent) {
  const double x0 = rng.uniform(0, extent), x1 = rng.uniform(0, extent);
  const double y0 = rng.uniform(0, extent), y1 = rng.uniform(0, extent);
  return {std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
}

TEST(MetricProperties, SymmetryRangeIdentityTranslation) {
  Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    const PixelBox a = random_box(rng, 100), b = random_box(rng, 100);
    const double i_ab = iou(a, b), d_ab = dice(a, b);
    ASSERT_EQ(i_ab, iou(b, a));
    ASSERT_EQ(d_ab, dice(b, a));
    ASSERT_GE(i_ab, 0.0);
    ASSERT_LE(i_ab, 1.0);
    ASSERT_GE(d_ab, 0.0);
    ASSERT_LE(d_ab, 1.0);
    if (area(a) + area(b) - intersection_area(a, b) > 0) {
      ASSERT_NEAR(d_ab, 2 * i_ab / (1 + i_ab), 1e-12);
    }
    // Integer shifts keep coordinates exactly representable.
    const double dx = static_cast<double>(rng.uniform_int(0, 50));
    const double dy = static_cast<double>(rng.uniform_int(0, 50));
    ASSERT_NEAR(iou(translated(a, dx, dy), translated(b, dx, dy)), i_ab, 1e-12);
    ASSERT_NEAR(dice(translated(a, dx, dy), translated(b, dx, dy)), d_ab, 1e-12);
  }
}

TEST(MetricProperties, AgreesWithRasterBruteForce) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto make = [&] {
      const int x0 = static_cast<int>(rng.uniform_int(0, 60));
      const int y0 = static_cast<int>(rng.uniform_int(0, 60));
      return oracle::IntBox{x0, y0, x0 + static_cast<int>(rng.uniform_int(10, 40)),
                            y0 + static_cast<int>(rng.uniform_int(10, 40))};
    };
    const oracle::IntBox a = make(), b = make();
    const auto [ri, rd] = oracle::raster_iou_dice(a, b);
    const PixelBox pa{double(a.x0), double(a.y0), double(a.x1), double(a.y1)};
    const PixelBox pb{double(b.x0), double(b.y0), double(b.x1), double(b.y1)};
    ASSERT_NEAR(iou(pa, pb), ri, 1e-12);
    ASSERT_NEAR(dice(pa, pb), rd, 1e-12);
  }
}

}  // namespace
}  // namespace mvg
