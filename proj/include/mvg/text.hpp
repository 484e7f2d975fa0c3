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

#ifndef MVG_TEXT_HPP_
#define MVG_TEXT_HPP_

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace mvg {

inline std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// Shortest decimal string that reads back to exactly `v`.
inline std::string format_exact(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Round half-up to `decimals` places. The 1e-9 nudge makes ties written in
// decimal (0.2585) round up even when the double sits just below them.
inline std::string format_fixed_half_up(double v, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  const double scaled = std::floor(v * scale + 0.5 + 1e-9);
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), scaled / scale, std::chars_format::fixed, decimals);
  return std::string(buf, ptr);
}

}  // namespace mvg

#endif  // MVG_TEXT_HPP_
