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

#ifndef MVG_COORD_CODEC_HPP_
#define MVG_COORD_CODEC_HPP_

// Conversion between pixel boxes and the model-facing box string
// "{<x_left><y_top><x_right><y_bottom>}" whose integers live on a 0..100 grid
// relative to the image size.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "mvg/geometry.hpp"

namespace mvg {

inline constexpr int kGridMax = 100;

struct NormBox {
  int qx_left = 0;
  int qy_top = 0;
  int qx_right = 0;
  int qy_bottom = 0;

  friend bool operator==(const NormBox&, const NormBox&) = default;
};

bool is_valid(const NormBox& nb) noexcept;

// q = round_half_up(100 * coord / dimension), clamped to [0, 100].
// Throws DimensionError for non-positive dimensions and BoundsError when the
// box is invalid or extends past the image.
NormBox quantize(const PixelBox& b, int image_width, int image_height);

// coord = q * dimension / 100. Throws DimensionError, or BoundsError for an
// invalid NormBox.
PixelBox dequantize(const NormBox& nb, int image_width, int image_height);

// Canonical text form: no whitespace, no leading zeros.
std::string encode(const NormBox& nb);

enum class ParseFailure { NoMatch, OutOfRange, CornerOrder };

std::string_view to_string(ParseFailure f) noexcept;

// Half-open character range [begin, end) into the parsed text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

class ParseOutcome {
 public:
  static ParseOutcome success(NormBox box, Span span) { return ParseOutcome(box, span); }
  static ParseOutcome failure(ParseFailure kind, std::optional<Span> span) {
    return ParseOutcome(kind, span);
  }

  bool ok() const noexcept { return std::holds_alternative<NormBox>(result_); }
  explicit operator bool() const noexcept { return ok(); }

  // Precondition: ok().
  const NormBox& box() const { return std::get<NormBox>(result_); }
  // Precondition: !ok().
  ParseFailure failure_kind() const { return std::get<ParseFailure>(result_); }

  // Present iff a syntactic candidate was found.
  const std::optional<Span>& matched_span() const noexcept { return span_; }

 private:
  ParseOutcome(NormBox box, Span span) : result_(box), span_(span) {}
  ParseOutcome(ParseFailure kind, std::optional<Span> span) : result_(kind), span_(span) {}

  std::variant<NormBox, ParseFailure> result_;
  std::optional<Span> span_;
};

// Finds the leftmost substring matching
//   "{" "<" INT ">" "<" INT ">" "<" INT ">" "<" INT ">" "}"   INT = [0-9]{1,3}
// and validates it. Only the first candidate is considered: a later valid box
// does not rescue an invalid first one. Never throws.
ParseOutcome parse(std::string_view text) noexcept;

}  // namespace mvg

#endif  // MVG_COORD_CODEC_HPP_
