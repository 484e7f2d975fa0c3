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

#ifndef MVG_MOCK_GROUNDER_HPP_
#define MVG_MOCK_GROUNDER_HPP_

// Deterministic stand-in for a grounding model. Produces response text with a
// controlled level of fidelity so the parser and evaluation can be driven end
// to end without a trained model.

#include <cstdint>
#include <string>
#include <string_view>

#include "mvg/dataset.hpp"

namespace mvg {

enum class MalformedMode { NoBox, OutOfRange, SwappedCorners, TruncatedBraces, ProseWrapped };

struct GrounderProfile {
  enum class Kind { Perfect, Jitter, Malformed };

  Kind kind = Kind::Perfect;
  // Jitter only; in grid units, within [0, 100].
  int max_offset_units = 0;
  // Malformed only.
  MalformedMode mode = MalformedMode::NoBox;
  std::uint64_t seed = 0;

  static GrounderProfile perfect(std::uint64_t seed = 0) { return {Kind::Perfect, 0, {}, seed}; }
  // Throws ValidationError when max_offset_units is outside [0, 100].
  static GrounderProfile jitter(int max_offset_units, std::uint64_t seed = 0);
  static GrounderProfile malformed(MalformedMode mode, std::uint64_t seed = 0) {
    return {Kind::Malformed, 0, mode, seed};
  }
};

// Accepts "perfect", "jitter:<units>" and "malformed:<mode>" where mode is one
// of no-box, out-of-range, swapped-corners, truncated-braces, prose-wrapped.
// Throws ValidationError.
GrounderProfile parse_profile(std::string_view text, std::uint64_t seed);

std::string_view to_string(MalformedMode mode) noexcept;

// Deterministic in (sample, profile).
std::string respond(const GroundingSample& sample, const GrounderProfile& profile);

}  // namespace mvg

#endif  // MVG_MOCK_GROUNDER_HPP_
