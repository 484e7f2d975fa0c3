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

#ifndef MVG_GEOMETRY_HPP_
#define MVG_GEOMETRY_HPP_

// Axis-aligned boxes on continuous coordinates with half-open extents, so a
// box's area is simply width * height.

#include <algorithm>
#include <cmath>

namespace mvg {

template <typename Scalar>
struct Box {
  Scalar x_left{};
  Scalar y_top{};
  Scalar x_right{};
  Scalar y_bottom{};

  friend bool operator==(const Box&, const Box&) = default;
};

using PixelBox = Box<double>;

template <typename Scalar>
bool is_valid(const Box<Scalar>& b) {
  const bool finite = std::isfinite(static_cast<double>(b.x_left)) &&
                      std::isfinite(static_cast<double>(b.y_top)) &&
                      std::isfinite(static_cast<double>(b.x_right)) &&
                      std::isfinite(static_cast<double>(b.y_bottom));
  return finite && b.x_left >= Scalar(0) && b.y_top >= Scalar(0) &&
         b.x_left <= b.x_right && b.y_top <= b.y_bottom;
}

template <typename Scalar>
Scalar width(const Box<Scalar>& b) {
  return b.x_right - b.x_left;
}

template <typename Scalar>
Scalar height(const Box<Scalar>& b) {
  return b.y_bottom - b.y_top;
}

template <typename Scalar>
Scalar area(const Box<Scalar>& b) {
  return width(b) * height(b);
}

template <typename Scalar>
Box<Scalar> translated(const Box<Scalar>& b, Scalar dx, Scalar dy) {
  return {b.x_left + dx, b.y_top + dy, b.x_right + dx, b.y_bottom + dy};
}

template <typename Scalar>
Scalar intersection_area(const Box<Scalar>& a, const Box<Scalar>& b) {
  const Scalar w = std::min(a.x_right, b.x_right) - std::max(a.x_left, b.x_left);
  const Scalar h = std::min(a.y_bottom, b.y_bottom) - std::max(a.y_top, b.y_top);
  if (w <= Scalar(0) || h <= Scalar(0)) return Scalar(0);
  return w * h;
}

// Returns 0 when the union is empty (both boxes degenerate).
template <typename Scalar>
Scalar iou(const Box<Scalar>& a, const Box<Scalar>& b) {
  const Scalar inter = intersection_area(a, b);
  const Scalar uni = area(a) + area(b) - inter;
  if (uni <= Scalar(0)) return Scalar(0);
  return inter / uni;
}

// Returns 0 when both areas are 0.
template <typename Scalar>
Scalar dice(const Box<Scalar>& a, const Box<Scalar>& b) {
  const Scalar total = area(a) + area(b);
  if (total <= Scalar(0)) return Scalar(0);
  return Scalar(2) * intersection_area(a, b) / total;
}

}  // namespace mvg

#endif  // MVG_GEOMETRY_HPP_
