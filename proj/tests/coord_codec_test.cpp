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

#include "mvg/coord_codec.hpp"

#include <gtest/gtest.h>

#include "mvg/errors.hpp"
#include "mvg/rng.hpp"
#include "oracles.hpp"

namespace mvg {
namespace {

TEST(Quantize, GridAndRounding) {
  EXPECT_EQ(quantize({0, 0, 448, 448}, 448, 448), (NormBox{0, 0, 100, 100}));
  EXPECT_EQ(quantize({224, 112, 336, 224}, 448, 448), (NormBox{50, 25, 75, 50}));
  // 100*c/448 = 22.32, 11.16, 66.96, 44.64
  EXPECT_EQ(quantize({100, 50, 300, 200}, 448, 448), (NormBox{22, 11, 67, 45}));
}

TEST(Quantize, HalfRoundsUp) {
  // 100 * 2 / 400 = 0.5 exactly.
  EXPECT_EQ(quantize({2, 2, 6, 6}, 400, 400), (NormBox{1, 1, 2, 2}));
}

TEST(Quantize, NonSquareUsesEachDimension) {
  EXPECT_EQ(quantize({512, 384, 1024, 768}, 1024, 768), (NormBox{50, 50, 100, 100}));
}

TEST(Quantize, Errors) {
  EXPECT_THROW(quantize({0, 0, 1, 1}, 0, 10), DimensionError);
  EXPECT_THROW(quantize({0, 0, 1, 1}, 10, -1), DimensionError);
  EXPECT_THROW(quantize({0, 0, 449, 10}, 448, 448), BoundsError);
  EXPECT_THROW(quantize({5, 0, 4, 10}, 448, 448), BoundsError);
}

TEST(Dequantize, KnownValues) {
  EXPECT_EQ(dequantize({0, 0, 100, 100}, 448, 448), (PixelBox{0, 0, 448, 448}));
  EXPECT_EQ(dequantize({50, 25, 75, 50}, 448, 448), (PixelBox{224, 112, 336, 224}));
  const PixelBox p = dequantize({22, 11, 67, 45}, 448, 448);
  EXPECT_DOUBLE_EQ(p.x_left, 98.56);
  EXPECT_DOUBLE_EQ(p.y_top, 49.28);
  EXPECT_DOUBLE_EQ(p.x_right, 300.16);
  EXPECT_DOUBLE_EQ(p.y_bottom, 201.6);
}

TEST(Dequantize, Errors) {
  EXPECT_THROW(dequantize({0, 0, 1, 1}, 0, 5), DimensionError);
  EXPECT_THROW(dequantize({0, 0, 101, 1}, 5, 5), BoundsError);
}

TEST(Encode, CanonicalText) {
  EXPECT_EQ(encode({0, 0, 100, 100}), "{<0><0><100><100>}");
  EXPECT_EQ(encode({50, 25, 75, 50}), "{<50><25><75><50>}");
  EXPECT_EQ(encode({7, 7, 7, 7}), "{<7><7><7><7>}");
}

TEST(Parse, FindsBoxInProse) {
  const std::string text = "the lesion is at {<12><30><45><80>} in the image";
  const ParseOutcome r = parse(text);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.box(), (NormBox{12, 30, 45, 80}));
  ASSERT_TRUE(r.matched_span());
  EXPECT_EQ(text.substr(r.matched_span()->begin, r.matched_span()->end - r.matched_span()->begin),
            "{<12><30><45><80>}");
}

TEST(Parse, Failures) {
  EXPECT_EQ(parse("no box here").failure_kind(), ParseFailure::NoMatch);
  EXPECT_FALSE(parse("no box here").matched_span());
  EXPECT_EQ(parse("").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{<45><80><12><30>}").failure_kind(), ParseFailure::CornerOrder);
  EXPECT_EQ(parse("{<120><0><130><10>}").failure_kind(), ParseFailure::OutOfRange);
  EXPECT_TRUE(parse("{<120><0><130><10>}").matched_span());
}

TEST(Parse, GrammarEdges) {
  EXPECT_EQ(parse("{<007><0><100><010>}").box(), (NormBox{7, 0, 100, 10}));
  EXPECT_EQ(parse("{<1000><0><1><1>}").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{< 1><2><3><4>}").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{<1><2><3><4> }").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{<1><2><3>}").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{<1><2><3><4>").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{<><2><3><4>}").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{<-1><2><3><4>}").failure_kind(), ParseFailure::NoMatch);
  EXPECT_EQ(parse("{{<1><2><3><4>}").box(), (NormBox{1, 2, 3, 4}));
}

TEST(Parse, FirstMatchWins) {
  EXPECT_EQ(parse("a {<1><2><3><4>} b {<5><6><7><8>}").box(), (NormBox{1, 2, 3, 4}));
  // An invalid first candidate is reported even when a valid one follows.
  EXPECT_EQ(parse("{<9><9><1><1>} then {<1><1><9><9>}").failure_kind(),
            ParseFailure::CornerOrder);
}

TEST(CodecProperties, TextRoundTripOnGridAndRandom) {
  const int grid[] = {0, 25, 50, 75, 100};
  for (int a : grid)
    for (int b : grid)
      for (int c : grid)
        for (int d : grid) {
          const NormBox nb{a, b, c, d};
          if (!is_valid(nb)) continue;
          const ParseOutcome r = parse(encode(nb));
          ASSERT_TRUE(r.ok());
          ASSERT_EQ(r.box(), nb);
        }
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const int x0 = static_cast<int>(rng.uniform_int(0, 100));
    const int y0 = static_cast<int>(rng.uniform_int(0, 100));
    const NormBox nb{x0, y0, static_cast<int>(rng.uniform_int(x0, 100)),
                     static_cast<int>(rng.uniform_int(y0, 100))};
    ASSERT_EQ(parse(encode(nb)).box(), nb);
  }
}

TEST(CodecProperties, GeometryRoundTripWithinHalfStep) {
  Rng rng(5);
  for (auto [w, h] : {std::pair{448, 448}, std::pair{1024, 768}, std::pair{3000, 2500}}) {
    for (int i = 0; i < 2000; ++i) {
      const double x0 = rng.uniform(0, w), x1 = rng.uniform(0, w);
      const double y0 = rng.uniform(0, h), y1 = rng.uniform(0, h);
      const PixelBox b{std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
      const PixelBox r = dequantize(quantize(b, w, h), w, h);
      ASSERT_LE(std::abs(r.x_left - b.x_left), w / 200.0);
      ASSERT_LE(std::abs(r.x_right - b.x_right), w / 200.0);
      ASSERT_LE(std::abs(r.y_top - b.y_top), h / 200.0);
      ASSERT_LE(std::abs(r.y_bottom - b.y_bottom), h / 200.0);
    }
  }
}

TEST(CodecProperties, GridFixpoint) {
  for (auto [w, h] : {std::pair{448, 448}, std::pair{1024, 768}, std::pair{3000, 2500}}) {
    for (int q = 0; q <= 100; ++q) {
      const PixelBox b = dequantize({q, q, 100, 100}, w, h);
      ASSERT_EQ(dequantize(quantize(b, w, h), w, h), b);
    }
  }
}

TEST(CodecProperties, ParseAgreesWithRegexOracle) {
  Rng rng(13);
  for (int i = 0; i < 20000; ++i) {
    const std::string s = oracle::fuzz_text(rng);
    const auto ref = oracle::regex_first_box(s);
    const ParseOutcome r = parse(s);
    if (!ref) {
      ASSERT_FALSE(r.ok()) << s;
      ASSERT_EQ(r.failure_kind(), ParseFailure::NoMatch) << s;
      continue;
    }
    ASSERT_TRUE(r.matched_span()) << s;
    ASSERT_EQ(r.matched_span()->begin, ref->begin) << s;
    ASSERT_EQ(r.matched_span()->end, ref->end) << s;
    const auto& v = ref->values;
    const bool in_range = std::all_of(v.begin(), v.end(), [](int q) { return q <= 100; });
    if (!in_range) {
      ASSERT_EQ(r.failure_kind(), ParseFailure::OutOfRange) << s;
    } else if (v[0] > v[2] || v[1] > v[3]) {
      ASSERT_EQ(r.failure_kind(), ParseFailure::CornerOrder) << s;
    } else {
      ASSERT_EQ(r.box(), (NormBox{v[0], v[1], v[2], v[3]})) << s;
    }
  }
}

}  // namespace
}  // namespace mvg
