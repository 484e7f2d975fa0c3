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

#include <algorithm>
#include <array>
#include <cmath>

#include "mvg/errors.hpp"

namespace mvg {
namespace {

void check_dimensions(int image_width, int image_height) {
  if (image_width <= 0 || image_height <= 0) {
    throw DimensionError("image dimensions must be positive, got " +
                         std::to_string(image_width) + "x" + std::to_string(image_height));
  }
}

int quantize_coord(double coord, int dimension) {
  const double q = std::floor(coord * kGridMax / dimension + 0.5);
  return static_cast<int>(std::clamp(q, 0.0, static_cast<double>(kGridMax)));
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Tries to match one candidate starting at text[pos] == '{'. On success stores
// the four integers and the end offset.
bool match_at(std::string_view text, std::size_t pos, std::array<int, 4>& values,
              std::size_t& end) {
  std::size_t i = pos + 1;
  for (int& v : values) {
    if (i >= text.size() || text[i] != '<') return false;
    ++i;
    int digits = 0;
    v = 0;
    while (i < text.size() && is_digit(text[i]) && digits < 3) {
      v = v * 10 + (text[i] - '0');
      ++i;
      ++digits;
    }
    if (digits == 0 || i >= text.size() || text[i] != '>') return false;
    ++i;
  }
  if (i >= text.size() || text[i] != '}') return false;
  end = i + 1;
  return true;
}

}  // namespace

bool is_valid(const NormBox& nb) noexcept {
  auto in_range = [](int q) { return q >= 0 && q <= kGridMax; };
  return in_range(nb.qx_left) && in_range(nb.qy_top) && in_range(nb.qx_right) &&
         in_range(nb.qy_bottom) && nb.qx_left <= nb.qx_right && nb.qy_top <= nb.qy_bottom;
}

NormBox quantize(const PixelBox& b, int image_width, int image_height) {
  check_dimensions(image_width, image_height);
  if (!is_valid(b) || b.x_right > image_width || b.y_bottom > image_height) {
    throw BoundsError("box exceeds the " + std::to_string(image_width) + "x" +
                      std::to_string(image_height) + " image or is malformed");
  }
  return {quantize_coord(b.x_left, image_width), quantize_coord(b.y_top, image_height),
          quantize_coord(b.x_right, image_width), quantize_coord(b.y_bottom, image_height)};
}

PixelBox dequantize(const NormBox& nb, int image_width, int image_height) {
  check_dimensions(image_width, image_height);
  if (!is_valid(nb)) throw BoundsError("normalized box outside the 0..100 grid");
  const double w = image_width;
  const double h = image_height;
  return {nb.qx_left * w / kGridMax, nb.qy_top * h / kGridMax, nb.qx_right * w / kGridMax,
          nb.qy_bottom * h / kGridMax};
}

std::string encode(const NormBox& nb) {
  std::string out;
  out.reserve(20);
  out += '{';
  for (int q : {nb.qx_left, nb.qy_top, nb.qx_right, nb.qy_bottom}) {
    out += '<';
    out += std::to_string(q);
    out += '>';
  }
  out += '}';
  return out;
}

std::string_view to_string(ParseFailure f) noexcept {
  switch (f) {
    case ParseFailure::NoMatch:
      return "NoMatch";
    case ParseFailure::OutOfRange:
      return "OutOfRange";
    case ParseFailure::CornerOrder:
      return "CornerOrder";
  }
  return "Unknown";
}

ParseOutcome parse(std::string_view text) noexcept {
  std::array<int, 4> v{};
  for (std::size_t pos = text.find('{'); pos != std::string_view::npos;
       pos = text.find('{', pos + 1)) {
    std::size_t end = 0;
    if (!match_at(text, pos, v, end)) continue;
    const Span span{pos, end};
    for (int q : v) {
      if (q > kGridMax) return ParseOutcome::failure(ParseFailure::OutOfRange, span);
    }
    const NormBox nb{v[0], v[1], v[2], v[3]};
    if (nb.qx_left > nb.qx_right || nb.qy_top > nb.qy_bottom) {
      return ParseOutcome::failure(ParseFailure::CornerOrder, span);
    }
    return ParseOutcome::success(nb, span);
  }
  return ParseOutcome::failure(ParseFailure::NoMatch, std::nullopt);
}

}  // namespace mvg
