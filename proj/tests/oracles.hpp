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

#ifndef MVG_TESTS_ORACLES_HPP_
#define MVG_TESTS_ORACLES_HPP_

// Independent reference computations used only by tests. Nothing here calls
// into the library code paths being checked.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "mvg/geometry.hpp"

namespace mvg::oracle {

struct IntBox {
  int x0, y0, x1, y1;
};

// Counts unit cells [x, x+1) x [y, y+1) covered by each box.
inline std::pair<double, double> raster_iou_dice(const IntBox& a, const IntBox& b) {
  const int lo_x = std::min(a.x0, b.x0), hi_x = std::max(a.x1, b.x1);
  const int lo_y = std::min(a.y0, b.y0), hi_y = std::max(a.y1, b.y1);
  long in_a = 0, in_b = 0, both = 0;
  for (int y = lo_y; y < hi_y; ++y) {
    for (int x = lo_x; x < hi_x; ++x) {
      const bool ia = x >= a.x0 && x < a.x1 && y >= a.y0 && y < a.y1;
      const bool ib = x >= b.x0 && x < b.x1 && y >= b.y0 && y < b.y1;
      in_a += ia;
      in_b += ib;
      both += ia && ib;
    }
  }
  const long uni = in_a + in_b - both;
  const double iou = uni == 0 ? 0.0 : double(both) / double(uni);
  const double dice = (in_a + in_b) == 0 ? 0.0 : 2.0 * double(both) / double(in_a + in_b);
  return {iou, dice};
}

// Row-major dense matrix on std::vector for loop-based references.
struct Dense {
  long rows = 0, cols = 0;
  std::vector<double> v;
  Dense(long r, long c) : rows(r), cols(c), v(static_cast<std::size_t>(r * c), 0.0) {}
  double& operator()(long i, long j) { return v[static_cast<std::size_t>(i * cols + j)]; }
  double operator()(long i, long j) const { return v[static_cast<std::size_t>(i * cols + j)]; }
};

template <typename M>
Dense to_dense(const M& m) {
  Dense d(m.rows(), m.cols());
  for (long i = 0; i < d.rows; ++i)
    for (long j = 0; j < d.cols; ++j) d(i, j) = m(i, j);
  return d;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  Dense c(a.rows, b.cols);
  for (long i = 0; i < a.rows; ++i)
    for (long k = 0; k < a.cols; ++k)
      for (long j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline Dense transpose(const Dense& a) {
  Dense t(a.cols, a.rows);
  for (long i = 0; i < a.rows; ++i)
    for (long j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

// x * (w0 + scale * b * a)^T with the merged weight materialized.
inline Dense lora_dense(const Dense& x, const Dense& w0, const Dense& a, const Dense& b,
                        double scale) {
  Dense w = matmul(b, a);
  for (std::size_t i = 0; i < w.v.size(); ++i) w.v[i] = w0.v[i] + scale * w.v[i];
  return matmul(x, transpose(w));
}

// Concatenation of each group of consecutive rows, by explicit indexing.
inline Dense merge_rows(const Dense& x, long group) {
  Dense out(x.rows / group, x.cols * group);
  for (long r = 0; r < out.rows; ++r)
    for (long g = 0; g < group; ++g)
      for (long c = 0; c < x.cols; ++c) out(r, g * x.cols + c) = x(r * group + g, c);
  return out;
}

inline double max_rel_diff(const Dense& a, const Dense& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    num = std::max(num, std::abs(a.v[i] - b.v[i]));
    den = std::max(den, std::abs(b.v[i]));
  }
  return den == 0 ? num : num / den;
}

// Leftmost match of the box grammar by std::regex, with its offset and the
// four captured integers.
struct RegexBox {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::array<int, 4> values{};
};

inline std::optional<RegexBox> regex_first_box(const std::string& text) {
  static const std::regex pattern(R"(\{<([0-9]{1,3})><([0-9]{1,3})><([0-9]{1,3})><([0-9]{1,3})>\})");
  std::smatch m;
  if (!std::regex_search(text, m, pattern)) return std::nullopt;
  RegexBox r;
  r.begin = static_cast<std::size_t>(m.position(0));
  r.end = r.begin + static_cast<std::size_t>(m.length(0));
  for (int i = 0; i < 4; ++i) r.values[i] = std::stoi(m[i + 1].str());
  return r;
}

// Random text assembled from grammar fragments so that candidate boxes, near
// misses and out-of-range values all show up regularly. Some tokens are whole
// box skeletons with random digit runs, occasionally with one byte mutated.
template <typename Rng>
std::string fuzz_text(Rng& rng, int max_tokens = 24) {
  static const char* const kFragments[] = {"{", "<", ">", "}", "{<", "><", ">}", " ", "x", "\n"};
  auto digits = [&rng](std::string& s) {
    const auto n = rng.uniform_int(0, 4);
    for (int d = 0; d < n; ++d) s += static_cast<char>('0' + rng.uniform_index(10));
  };
  std::string s;
  const auto tokens = rng.uniform_int(0, max_tokens);
  for (int t = 0; t < tokens; ++t) {
    const auto pick = rng.uniform_index(8);
    if (pick == 0) {
      std::string box = "{";
      for (int k = 0; k < 4; ++k) {
        box += '<';
        if (rng.uniform_index(2) == 0) {
          box += std::to_string(rng.uniform_index(151));
        } else {
          digits(box);
        }
        box += '>';
      }
      box += '}';
      if (rng.uniform_index(4) == 0) {
        box[rng.uniform_index(box.size())] = kFragments[rng.uniform_index(std::size(kFragments))][0];
      }
      s += box;
    } else if (pick < 3) {
      digits(s);
    } else {
      s += kFragments[rng.uniform_index(std::size(kFragments))];
    }
  }
  return s;
}

}  // namespace mvg::oracle

#endif  // MVG_TESTS_ORACLES_HPP_
