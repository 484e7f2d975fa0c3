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

#include "mvg/mock_grounder.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "mvg/coord_codec.hpp"
#include "mvg/errors.hpp"
#include "mvg/rng.hpp"

namespace mvg {
namespace {

constexpr std::array<std::pair<MalformedMode, std::string_view>, 5> kModeNames = {{
    {MalformedMode::NoBox, "no-box"},
    {MalformedMode::OutOfRange, "out-of-range"},
    {MalformedMode::SwappedCorners, "swapped-corners"},
    {MalformedMode::TruncatedBraces, "truncated-braces"},
    {MalformedMode::ProseWrapped, "prose-wrapped"},
}};

std::string box_text(int a, int b, int c, int d) {
  return "{<" + std::to_string(a) + "><" + std::to_string(b) + "><" + std::to_string(c) + "><" +
         std::to_string(d) + ">}";
}

std::string wrap(std::string_view phrase, std::string_view box) {
  return "The " + std::string(phrase) + " is located at " + std::string(box) + " in the image.";
}

std::string malformed(const GroundingSample& sample, const NormBox& nb, MalformedMode mode) {
  switch (mode) {
    case MalformedMode::NoBox:
      return "I am unable to locate the " + sample.phrase + " in this image.";
    case MalformedMode::OutOfRange:
      // Three-digit values above 100 keep the text inside the grammar.
      return wrap(sample.phrase,
                  box_text(nb.qx_left, nb.qy_top, nb.qx_right + 101, nb.qy_bottom + 101));
    case MalformedMode::SwappedCorners: {
      int left = nb.qx_right;
      int right = nb.qx_left;
      if (left == right) {
        // A zero-width box reads the same both ways; force an inversion.
        left = std::min(right + 1, kGridMax);
        right = left - 1;
      }
      return wrap(sample.phrase, box_text(left, nb.qy_bottom, right, nb.qy_top));
    }
    case MalformedMode::TruncatedBraces: {
      std::string box = encode(nb);
      box.pop_back();
      return "The " + sample.phrase + " is located at " + box;
    }
    case MalformedMode::ProseWrapped:
      return "Sure. " + wrap(sample.phrase, encode(nb));
  }
  return {};
}

}  // namespace

GrounderProfile GrounderProfile::jitter(int max_offset_units, std::uint64_t seed) {
  if (max_offset_units < 0 || max_offset_units > kGridMax) {
    throw ValidationError("jitter must be within [0, 100] grid units, got " +
                          std::to_string(max_offset_units));
  }
  return {Kind::Jitter, max_offset_units, {}, seed};
}

std::string_view to_string(MalformedMode mode) noexcept {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

GrounderProfile parse_profile(std::string_view text, std::uint64_t seed) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "perfect" && colon == std::string_view::npos) return GrounderProfile::perfect(seed);
  if (kind == "jitter") {
    int units = -1;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), units);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || arg.empty()) {
      throw ValidationError("jitter profile needs an integer offset: " + std::string(text));
    }
    return GrounderProfile::jitter(units, seed);
  }
  if (kind == "malformed") {
    for (const auto& [m, name] : kModeNames) {
      if (arg == name) return GrounderProfile::malformed(m, seed);
    }
  }
  throw ValidationError("unknown grounder profile \"" + std::string(text) + "\"");
}

std::string respond(const GroundingSample& sample, const GrounderProfile& profile) {
  const NormBox nb = quantize(sample.gt_box, sample.image_width, sample.image_height);
  switch (profile.kind) {
    case GrounderProfile::Kind::Perfect:
      return encode(nb);
    case GrounderProfile::Kind::Jitter: {
      Rng rng(derive_seed(profile.seed, fnv1a(sample.sample_id)));
      const int m = profile.max_offset_units;
      auto shift = [&](int q) {
        return static_cast<int>(std::clamp<std::int64_t>(q + rng.uniform_int(-m, m), 0, kGridMax));
      };
      NormBox j{shift(nb.qx_left), shift(nb.qy_top), shift(nb.qx_right), shift(nb.qy_bottom)};
      if (j.qx_left > j.qx_right) std::swap(j.qx_left, j.qx_right);
      if (j.qy_top > j.qy_bottom) std::swap(j.qy_top, j.qy_bottom);
      return wrap(sample.phrase, encode(j));
    }
    case GrounderProfile::Kind::Malformed:
      return malformed(sample, nb, profile.mode);
  }
  return {};
}

}  // namespace mvg
